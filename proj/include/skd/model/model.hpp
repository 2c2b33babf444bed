#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "skd/linalg/matrix.hpp"
#include "skd/linalg/svd.hpp"

namespace skd {

inline constexpr std::uint32_t kVocab = 256;

struct ModelConfig {
    std::uint32_t n_layers = 4;
    std::uint32_t d_model = 128;
    std::uint32_t n_heads = 4;
    std::uint32_t d_ff = 512;
    std::uint32_t vocab = kVocab;
    std::uint32_t max_context = 256;
    std::uint64_t seed = 0;

    // Throws InvalidConfig.
    void validate() const;
    std::size_t head_dim() const noexcept { return d_model / n_heads; }

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

enum class MlpMatrix { Gate = 0, Up = 1, Down = 2 };
inline constexpr MlpMatrix kMlpMatrices[] = {MlpMatrix::Gate, MlpMatrix::Up, MlpMatrix::Down};
std::string to_string(MlpMatrix m);
MlpMatrix mlp_matrix_from_string(const std::string& s);

// An MLP projection is either a dense out x in matrix or its factorization.
template <class T>
using MlpWeight = std::variant<BasicMatrix<T>, FactoredLinear<T>>;

template <class T>
std::size_t weight_rows(const MlpWeight<T>& w) {
    return std::visit([](const auto& x) { return x.rows(); }, w);
}
template <class T>
std::size_t weight_cols(const MlpWeight<T>& w) {
    return std::visit([](const auto& x) { return x.cols(); }, w);
}
template <class T>
bool is_factored(const MlpWeight<T>& w) {
    return std::holds_alternative<FactoredLinear<T>>(w);
}
template <class T>
BasicMatrix<T> dense_equivalent(const MlpWeight<T>& w) {
    if (const auto* d = std::get_if<BasicMatrix<T>>(&w)) return *d;
    return materialize(std::get<FactoredLinear<T>>(w));
}

template <class T>
struct LayerParams {
    std::vector<T> ln1_gain, ln1_bias;
    BasicMatrix<T> wq, wk, wv, wo;  // d x d, out x in
    std::vector<T> ln2_gain, ln2_bias;
    MlpWeight<T> gate;  // d_ff x d
    MlpWeight<T> up;    // d_ff x d
    MlpWeight<T> down;  // d x d_ff

    MlpWeight<T>& mlp(MlpMatrix m) { return m == MlpMatrix::Gate ? gate : m == MlpMatrix::Up ? up : down; }
    const MlpWeight<T>& mlp(MlpMatrix m) const {
        return m == MlpMatrix::Gate ? gate : m == MlpMatrix::Up ? up : down;
    }
};

// Byte-level pre-LN causal transformer with a gated MLP.
template <class T>
struct BasicModel {
    ModelConfig config;
    BasicMatrix<T> token_embedding;     // vocab x d
    BasicMatrix<T> position_embedding;  // max_context x d
    std::vector<LayerParams<T>> layers;
    std::vector<T> final_gain, final_bias;
    BasicMatrix<T> output;  // vocab x d
};

using Model = BasicModel<float>;
using ModelD = BasicModel<double>;

enum class ParamGroup { Embedding, Attention, Mlp, Norm, Head };

template <class T>
struct ParamRef {
    std::string name;
    ParamGroup group;
    std::span<T> values;
};

// Every parameter array in serialization order. Factored weights contribute
// two entries (".a", ".b").
template <class T>
std::vector<ParamRef<T>> parameters(BasicModel<T>& m);
template <class T>
std::vector<ParamRef<const T>> parameters(const BasicModel<T>& m);

// Throws InvalidConfig.
Model new_model(const ModelConfig& config);

// Same shapes (including factorization ranks), all zeros.
template <class T>
BasicModel<T> zeros_like(const BasicModel<T>& m);

template <class To, class From>
BasicModel<To> model_cast(const BasicModel<From>& m);

struct ParamCount {
    std::size_t embedding = 0;  // token + position embeddings
    std::size_t attention = 0;
    std::size_t mlp = 0;          // dense m*n, factored r*(m+n)
    std::size_t mlp_nonzero = 0;  // like mlp, but dense weights count nonzero entries only
    std::size_t other = 0;        // layer norms and output head
    std::size_t total = 0;
};

template <class T>
ParamCount param_count(const BasicModel<T>& m);

// MLP parameter count of the all-dense model with this config.
std::size_t dense_mlp_params(const ModelConfig& c);

// Fraction of dense MLP parameters removed, counting zeroed weights as removed.
template <class T>
double mlp_reduction(const BasicModel<T>& m);

// Checks every shape against the config. Throws ShapeError.
template <class T>
void validate_shapes(const BasicModel<T>& m);

}  // namespace skd
