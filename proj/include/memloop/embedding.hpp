#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "memloop/kernels.hpp"

namespace memloop {

using EmbeddingVector = std::vector<float>;

enum class LayerTag { Ver, Sem, Epi, Cue };

std::string_view to_string(LayerTag tag);
LayerTag layer_tag_from_string(std::string_view s);

// The three knowledge layers, in the order they appear everywhere.
inline constexpr LayerTag kKnowledgeLayers[3] = {LayerTag::Ver, LayerTag::Sem, LayerTag::Epi};

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
    virtual std::string id() const = 0;
};

// Deterministic pseudo-random embedder seeded by a hash of the text. Keeps all
// retrieval tests offline; equal texts map to equal vectors.
class HashEmbeddingBackend : public EmbeddingBackend {
public:
    explicit HashEmbeddingBackend(size_t dims = 64, uint64_t seed = 0);
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string id() const override;

private:
    size_t dims_;
    uint64_t seed_;
};

struct HttpBackendConfig {
    std::string base_url;
    std::string api_key;
    std::string model;
    int timeout_seconds = 120;
};

std::unique_ptr<EmbeddingBackend> make_http_embedding_backend(HttpBackendConfig config);

// One unit-normalized vector per input, order-preserving. Backend failures are
// retried up to max_retries before EmbeddingBackendError.
std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts,
                                         EmbeddingBackend& backend, int max_retries = 3,
                                         int backoff_ms = 200);

struct ScoredUnit {
    std::string unit_id;
    float score;
};

// Exact-scan vector index over the retrievable layers. Immutable after load;
// concurrent readers are safe.
class VectorIndex {
public:
    VectorIndex() = default;
    explicit VectorIndex(size_t dims) : dims_(dims) {}

    void add(std::string unit_id, LayerTag layer, const EmbeddingVector& vec);

    size_t dims() const { return dims_; }
    size_t size(LayerTag layer) const { return layer_data(layer).ids.size(); }
    size_t total_size() const;
    bool contains(LayerTag layer, std::string_view unit_id) const;

    const std::vector<std::string>& ids(LayerTag layer) const { return layer_data(layer).ids; }
    std::span<const float> vector_of(LayerTag layer, std::string_view unit_id) const;

    // Cosine of the query against every unit in the layer (vectors are unit
    // norm, so this is a dot product).
    std::vector<float> scores(const EmbeddingVector& query, LayerTag layer,
                              Execution exec = default_execution()) const;

    // Top-k by descending score, ties broken by ascending unit_id. Throws
    // EmptyLayerError when the layer has no entries.
    std::vector<ScoredUnit> top_k(const EmbeddingVector& query, LayerTag layer, int k,
                                  Execution exec = default_execution()) const;

private:
    struct Layer {
        std::vector<std::string> ids;
        std::vector<float> matrix; // row-major, ids.size() x dims
    };

    const Layer& layer_data(LayerTag layer) const { return layers_[static_cast<size_t>(layer)]; }
    Layer& layer_data(LayerTag layer) { return layers_[static_cast<size_t>(layer)]; }

    size_t dims_ = 0;
    Layer layers_[4];
};

} // namespace memloop
