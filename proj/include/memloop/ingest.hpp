#pragma once

#include <string>
#include <vector>

#include "memloop/tokenize.hpp"

namespace memloop {

struct Document {
    std::string id;
    std::string title;
    std::string text;
};

struct Chunk {
    std::string id;     // "{doc_id}#{seq_index}"
    std::string doc_id;
    int seq_index = 0;
    std::string text;   // exact substring of the document
    int token_count = 0;
};

std::string chunk_id(const std::string& doc_id, int seq_index);

// Splits a document into token-bounded chunks. Boundaries fall between words,
// preferring the last sentence-final punctuation inside the window. Chunks are
// exact substrings, so concatenating them in order reproduces the document text.
// Throws EmptyDocumentError for documents with no non-whitespace content.
std::vector<Chunk> chunk_document(const Document& doc, int max_tokens,
                                  const TokenCounter& counter = default_token_counter());

// One document per line: {"id": ..., "title": ..., "text": ...}
std::vector<Document> load_corpus(const std::string& path);

} // namespace memloop
