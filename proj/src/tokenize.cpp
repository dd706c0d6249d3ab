#include "memloop/tokenize.hpp"

#include <cctype>

namespace memloop {

int word_count(std::string_view text) {
    int count = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

int count_tokens(std::string_view text) {
    int words = word_count(text);
    return (words * 4 + 2) / 3; // ceil(words * 4/3)
}

TokenCounter default_token_counter() {
    return [](std::string_view text) { return count_tokens(text); };
}

} // namespace memloop
