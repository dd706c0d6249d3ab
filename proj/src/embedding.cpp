#include "memloop/embedding.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "memloop/errors.hpp"

namespace memloop {

namespace {

uint64_t fnv1a64(std::string_view data) {
    uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

float uniform_pm1(uint64_t& state) {
    // 53-bit mantissa to [0,1), then to [-1,1)
    double u = double(splitmix64(state) >> 11) * (1.0 / 9007199254740992.0);
    return static_cast<float>(2.0 * u - 1.0);
}

} // namespace

std::string_view to_string(LayerTag tag) {
    switch (tag) {
    case LayerTag::Ver: return "ver";
    case LayerTag::Sem: return "sem";
    case LayerTag::Epi: return "epi";
    case LayerTag::Cue: return "cue";
    }
    return "?";
}

LayerTag layer_tag_from_string(std::string_view s) {
    if (s == "ver") return LayerTag::Ver;
    if (s == "sem") return LayerTag::Sem;
    if (s == "epi") return LayerTag::Epi;
    if (s == "cue") return LayerTag::Cue;
    throw ConfigError("unknown layer tag: " + std::string(s));
}

HashEmbeddingBackend::HashEmbeddingBackend(size_t dims, uint64_t seed)
    : dims_(dims), seed_(seed) {}

std::vector<EmbeddingVector> HashEmbeddingBackend::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        uint64_t state = fnv1a64(text) ^ seed_;
        EmbeddingVector vec(dims_);
        for (auto& x : vec) {
            x = uniform_pm1(state);
        }
        out.push_back(std::move(vec));
    }
    return out;
}

std::string HashEmbeddingBackend::id() const {
    return "mock-hash-d" + std::to_string(dims_) + "-s" + std::to_string(seed_);
}

namespace {

class HttpEmbeddingBackend : public EmbeddingBackend {
public:
    explicit HttpEmbeddingBackend(HttpBackendConfig config) : config_(std::move(config)) {}

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
        httplib::Client client(config_.base_url);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_connection_timeout(10, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        nlohmann::json body = {{"model", config_.model}, {"input", texts}};
        auto res = client.Post("/embeddings", headers, body.dump(), "application/json");
        if (!res) {
            throw EmbeddingBackendError("no response from " + config_.base_url);
        }
        if (res->status == 429) {
            throw QuotaExceededError(res->body);
        }
        if (res->status != 200) {
            throw EmbeddingBackendError("http " + std::to_string(res->status) + ": " + res->body);
        }
        nlohmann::json payload = nlohmann::json::parse(res->body);
        std::vector<EmbeddingVector> out(texts.size());
        for (const auto& item : payload.at("data")) {
            size_t index = item.at("index").get<size_t>();
            if (index >= out.size()) {
                throw EmbeddingBackendError("embedding index out of range");
            }
            out[index] = item.at("embedding").get<EmbeddingVector>();
        }
        return out;
    }

    std::string id() const override { return config_.model; }

private:
    HttpBackendConfig config_;
};

} // namespace

std::unique_ptr<EmbeddingBackend> make_http_embedding_backend(HttpBackendConfig config) {
    return std::make_unique<HttpEmbeddingBackend>(std::move(config));
}

std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts,
                                         EmbeddingBackend& backend, int max_retries,
                                         int backoff_ms) {
    for (const auto& text : texts) {
        if (text.empty()) {
            throw std::invalid_argument("embed_texts: empty input text");
        }
    }
    if (texts.empty()) return {};

    std::vector<EmbeddingVector> vectors;
    std::string last_error;
    for (int attempt = 0;; ++attempt) {
        try {
            vectors = backend.embed(texts);
            break;
        } catch (const QuotaExceededError&) {
            throw;
        } catch (const std::exception& e) {
            last_error = e.what();
            if (attempt >= max_retries) {
                throw EmbeddingBackendError("after " + std::to_string(attempt + 1) +
                                            " attempts: " + last_error);
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms << attempt));
        }
    }
    if (vectors.size() != texts.size()) {
        throw EmbeddingBackendError("backend returned " + std::to_string(vectors.size()) +
                                    " vectors for " + std::to_string(texts.size()) + " texts");
    }
    for (auto& vec : vectors) {
        normalize(vec);
    }
    return vectors;
}

void VectorIndex::add(std::string unit_id, LayerTag layer, const EmbeddingVector& vec) {
    if (dims_ == 0) {
        dims_ = vec.size();
    }
    if (vec.size() != dims_) {
        throw ConfigError("embedding dims mismatch for " + unit_id);
    }
    if (contains(layer, unit_id)) {
        throw ConfigError("duplicate unit id in layer: " + unit_id);
    }
    auto& data = layer_data(layer);
    data.ids.push_back(std::move(unit_id));
    data.matrix.insert(data.matrix.end(), vec.begin(), vec.end());
}

size_t VectorIndex::total_size() const {
    size_t total = 0;
    for (const auto& layer : layers_) {
        total += layer.ids.size();
    }
    return total;
}

bool VectorIndex::contains(LayerTag layer, std::string_view unit_id) const {
    const auto& ids = layer_data(layer).ids;
    return std::find(ids.begin(), ids.end(), unit_id) != ids.end();
}

std::span<const float> VectorIndex::vector_of(LayerTag layer, std::string_view unit_id) const {
    const auto& data = layer_data(layer);
    auto it = std::find(data.ids.begin(), data.ids.end(), unit_id);
    if (it == data.ids.end()) {
        throw ConfigError("unknown unit id: " + std::string(unit_id));
    }
    size_t row = static_cast<size_t>(it - data.ids.begin());
    return std::span<const float>(data.matrix).subspan(row * dims_, dims_);
}

std::vector<float> VectorIndex::scores(const EmbeddingVector& query, LayerTag layer,
                                       Execution exec) const {
    const auto& data = layer_data(layer);
    std::vector<float> out(data.ids.size());
    dot_scores(data.matrix, data.ids.size(), dims_, query, out, exec);
    return out;
}

std::vector<ScoredUnit> VectorIndex::top_k(const EmbeddingVector& query, LayerTag layer, int k,
                                           Execution exec) const {
    if (k < 1) {
        throw std::invalid_argument("top_k: k must be >= 1");
    }
    const auto& data = layer_data(layer);
    if (data.ids.empty()) {
        throw EmptyLayerError(std::string(to_string(layer)));
    }
    std::vector<float> layer_scores = scores(query, layer, exec);

    std::vector<size_t> order(data.ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (layer_scores[a] != layer_scores[b]) return layer_scores[a] > layer_scores[b];
        return data.ids[a] < data.ids[b];
    });

    size_t take = std::min<size_t>(static_cast<size_t>(k), order.size());
    std::vector<ScoredUnit> result;
    result.reserve(take);
    for (size_t i = 0; i < take; ++i) {
        result.push_back({data.ids[order[i]], layer_scores[order[i]]});
    }
    return result;
}

} // namespace memloop
