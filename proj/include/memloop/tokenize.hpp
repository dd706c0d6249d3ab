#pragma once

#include <functional>
#include <string_view>

namespace memloop {

// Counting contract: deterministic and monotone under concatenation.
using TokenCounter = std::function<int(std::string_view)>;

// Whitespace-delimited word count.
int word_count(std::string_view text);

// Default heuristic: ceil(word_count * 4/3). Offline stand-in for a subword tokenizer.
int count_tokens(std::string_view text);

TokenCounter default_token_counter();

} // namespace memloop
