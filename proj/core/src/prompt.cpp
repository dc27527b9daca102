#include "styleseg/prompt.hpp"

#include <algorithm>
#include <set>

namespace styleseg {

std::vector<std::string> Vocab::tokens() const {
    std::vector<std::string> out;
    out.push_back(anatomy);
    out.insert(out.end(), class_tokens.begin(), class_tokens.end());
    out.insert(out.end(), style_tokens.begin(), style_tokens.end());
    return out;
}

int Vocab::index_of(const std::string& token) const {
    auto all = tokens();
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == token) return static_cast<int>(i);
    throw VocabError("unknown token: " + token);
}

bool Vocab::contains(const std::string& token) const {
    auto all = tokens();
    return std::find(all.begin(), all.end(), token) != all.end();
}

bool Vocab::is_style_token(const std::string& token) const {
    return std::find(style_tokens.begin(), style_tokens.end(), token) != style_tokens.end();
}

void Vocab::validate() const {
    auto all = tokens();
    std::set<std::string> uniq(all.begin(), all.end());
    if (uniq.size() != all.size()) throw VocabError("vocabulary tokens are not unique");
    if (class_tokens.empty()) throw VocabError("vocabulary has no class tokens");
    if (style_tokens.empty()) throw VocabError("vocabulary has no style tokens");
    if (embed_dim < 1) throw VocabError("embedding dim must be positive");
    if (size() > 32) throw VocabError("vocabulary larger than the 32-token budget");
}

Vocab Vocab::make(const std::vector<std::string>& domain_names, int num_classes, int embed_dim) {
    Vocab v;
    v.embed_dim = embed_dim;
    for (int c = 1; c <= num_classes; ++c) v.class_tokens.push_back("class" + std::to_string(c));
    v.style_tokens = domain_names;
    v.validate();
    return v;
}

Prompt build_style_agnostic_prompt(const MaskT& mask, const Vocab& vocab) {
    std::set<int> present;
    for (auto m : mask.v)
        if (m != 0) present.insert(static_cast<int>(m));

    Prompt p;
    p.tokens.push_back(vocab.anatomy);
    for (int c : present) {
        if (c > static_cast<int>(vocab.class_tokens.size()))
            throw VocabError("mask class " + std::to_string(c) + " has no vocabulary token");
        p.tokens.push_back(vocab.class_tokens[static_cast<size_t>(c - 1)]);
    }
    return p;
}

Prompt build_style_intervention_prompt(const MaskT& mask, const std::string& style_token,
                                       const Vocab& vocab) {
    if (!vocab.is_style_token(style_token))
        throw VocabError("not a style token: " + style_token);
    Prompt p = build_style_agnostic_prompt(mask, vocab);
    p.tokens.push_back(style_token);
    return p;
}

}  // namespace styleseg
