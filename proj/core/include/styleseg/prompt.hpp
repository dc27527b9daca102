#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "styleseg/errors.hpp"
#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

namespace styleseg {

// Tag-bag prompts over a small learned vocabulary: a fixed anatomy prefix,
// one token per segmentation class, one style token per domain.
struct Vocab {
    std::string anatomy = "phantom";
    std::vector<std::string> class_tokens;   // index i -> class id i+1
    std::vector<std::string> style_tokens;   // one per domain name
    int embed_dim = 32;

    std::vector<std::string> tokens() const;
    int size() const { return 1 + static_cast<int>(class_tokens.size() + style_tokens.size()); }
    int index_of(const std::string& token) const;  // throws VocabError
    bool contains(const std::string& token) const;
    bool is_style_token(const std::string& token) const;

    void validate() const;

    static Vocab make(const std::vector<std::string>& domain_names, int num_classes,
                      int embed_dim = 32);
};

struct Prompt {
    std::vector<std::string> tokens;
};

Prompt build_style_agnostic_prompt(const MaskT& mask, const Vocab& vocab);
Prompt build_style_intervention_prompt(const MaskT& mask, const std::string& style_token,
                                       const Vocab& vocab);

// Trainable token embeddings; the stand-in for a text encoder. Trained only
// inside diffusion training steps, read-only everywhere else.
template <typename T>
struct EmbeddingTable {
    Tensor<T> weights;  // (V, dim)
    Tensor<T> grad;

    void init(int vocab_size, int dim, Rng& rng) {
        weights = Tensor<T>({vocab_size, dim});
        grad = Tensor<T>({vocab_size, dim});
        for (auto& w : weights.v) w = static_cast<T>(rng.normal(0.0, 0.5));
    }
    void zero_grad() { grad.fill(T(0)); }
};

// Mean of the token embedding rows: order-invariant, fixed dimension.
// Rows are accumulated in sorted index order so permuted prompts produce
// bit-identical vectors.
template <typename T>
std::vector<T> encode_prompt(const Prompt& prompt, const Vocab& vocab,
                             const EmbeddingTable<T>& table) {
    if (prompt.tokens.empty()) throw VocabError("cannot encode an empty prompt");
    std::vector<int> rows;
    rows.reserve(prompt.tokens.size());
    for (const auto& tok : prompt.tokens) rows.push_back(vocab.index_of(tok));
    std::sort(rows.begin(), rows.end());

    int dim = table.weights.shape[1];
    std::vector<T> out(static_cast<size_t>(dim), T(0));
    for (int row : rows)
        for (int d = 0; d < dim; ++d) out[static_cast<size_t>(d)] += table.weights.at(row, d);
    T inv = T(1) / static_cast<T>(rows.size());
    for (auto& x : out) x *= inv;
    return out;
}

// Accumulates d(loss)/d(embedding rows) for the mean aggregation.
template <typename T>
void encode_prompt_backward(const Prompt& prompt, const Vocab& vocab, const std::vector<T>& dout,
                            EmbeddingTable<T>& table) {
    T inv = T(1) / static_cast<T>(prompt.tokens.size());
    int dim = table.weights.shape[1];
    for (const auto& tok : prompt.tokens) {
        int row = vocab.index_of(tok);
        for (int d = 0; d < dim; ++d) table.grad.at(row, d) += inv * dout[static_cast<size_t>(d)];
    }
}

}  // namespace styleseg
