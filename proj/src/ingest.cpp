#include "memloop/ingest.hpp"

#include <fstream>

#include <json.hpp>

#include "memloop/errors.hpp"

namespace memloop {

namespace {

struct WordSpan {
    size_t begin;
    size_t end; // one past the last character
};

std::vector<WordSpan> word_spans(const std::string& text) {
    std::vector<WordSpan> spans;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        size_t begin = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        spans.push_back({begin, i});
    }
    return spans;
}

bool ends_sentence(std::string_view word) {
    size_t end = word.size();
    while (end > 0) {
        char c = word[end - 1];
        if (c == '"' || c == '\'' || c == ')' || c == ']') {
            --end;
        } else {
            break;
        }
    }
    if (end == 0) return false;
    char c = word[end - 1];
    return c == '.' || c == '!' || c == '?';
}

} // namespace

std::string chunk_id(const std::string& doc_id, int seq_index) {
    return doc_id + "#" + std::to_string(seq_index);
}

std::vector<Chunk> chunk_document(const Document& doc, int max_tokens,
                                  const TokenCounter& counter) {
    if (max_tokens < 1) {
        throw ConfigError("max_tokens must be >= 1");
    }
    auto spans = word_spans(doc.text);
    if (spans.empty()) {
        throw EmptyDocumentError(doc.id);
    }

    // cut_end(first, last) = offset one past the chunk covering words [first, last]
    auto cut_end = [&](size_t last) {
        return last + 1 < spans.size() ? spans[last + 1].begin : doc.text.size();
    };

    std::vector<Chunk> chunks;
    size_t first = 0;
    size_t chunk_begin = 0;
    while (first < spans.size()) {
        // Greedy fill: widest window of words that stays within the budget.
        size_t last = first;
        while (last + 1 < spans.size()) {
            std::string_view candidate(doc.text.data() + chunk_begin,
                                       cut_end(last + 1) - chunk_begin);
            if (counter(candidate) > max_tokens) break;
            ++last;
        }

        // Back off to the last sentence end inside the window, when the window
        // is full and one exists.
        if (last + 1 < spans.size()) {
            for (size_t s = last;; --s) {
                std::string_view word(doc.text.data() + spans[s].begin,
                                      spans[s].end - spans[s].begin);
                if (ends_sentence(word)) {
                    last = s;
                    break;
                }
                if (s == first) break;
            }
        }

        size_t end = cut_end(last);
        Chunk chunk;
        chunk.doc_id = doc.id;
        chunk.seq_index = static_cast<int>(chunks.size());
        chunk.id = chunk_id(doc.id, chunk.seq_index);
        chunk.text = doc.text.substr(chunk_begin, end - chunk_begin);
        chunk.token_count = counter(chunk.text);
        chunks.push_back(std::move(chunk));

        first = last + 1;
        chunk_begin = end;
    }
    return chunks;
}

std::vector<Document> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open corpus file: " + path);
    }
    std::vector<Document> docs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        Document doc;
        doc.id = record.at("id").get<std::string>();
        doc.title = record.value("title", "");
        doc.text = record.at("text").get<std::string>();
        docs.push_back(std::move(doc));
    }
    return docs;
}

} // namespace memloop
