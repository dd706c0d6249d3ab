#pragma once

#include <map>
#include <string>
#include <string_view>

namespace memloop {

enum class AgentRole {
    Regulation,       // plans new probing queries
    Comprehension,    // writes the synthesized cue for one retrieval
    Integration,      // fuses past cues into a background summary
    QA,               // attempts the final answer
    TripleExtraction,
    Summarization,
};

std::string_view to_string(AgentRole role);
AgentRole agent_role_from_string(std::string_view s);

enum class AnswerMode { MultipleChoice, FreeForm };

// Raw template text for a role. The QA role has a multiple-choice and a
// free-form variant; every other role ignores the mode.
const std::string& prompt_template(AgentRole role, AnswerMode mode = AnswerMode::MultipleChoice);

using Bindings = std::map<std::string, std::string>;

// Replaces every {name} placeholder with its binding, single pass, values
// inserted verbatim. Throws MissingBindingError for an unbound placeholder.
std::string render_template(const std::string& tmpl, const Bindings& bindings);

std::string render_prompt(AgentRole role, const Bindings& bindings,
                          AnswerMode mode = AnswerMode::MultipleChoice);

} // namespace memloop
