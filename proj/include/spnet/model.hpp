#pragma once

// Growth-model configuration shared by the grower, the enumeration oracle,
// the exact formulas and the CLI.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "spnet/rational.hpp"

namespace spnet {

enum class Model { bernoulli, binary, preferential, saturation, bary };

inline const char* model_name(Model m) {
    switch (m) {
        case Model::bernoulli: return "bernoulli";
        case Model::binary: return "binary";
        case Model::preferential: return "preferential";
        case Model::saturation: return "saturation";
        case Model::bary: return "bary";
    }
    return "?";
}

inline Model parse_model(const std::string& s) {
    if (s == "bernoulli") return Model::bernoulli;
    if (s == "binary") return Model::binary;
    if (s == "preferential") return Model::preferential;
    if (s == "saturation") return Model::saturation;
    if (s == "bary") return Model::bary;
    throw std::invalid_argument("unknown model '" + s + "'");
}

// The parameter p, kept exact when given as a ratio. Formulas that branch on
// p = 1/2 demand the exact form: a float that close to 1/2 is ambiguous and
// is rejected rather than silently resolved.
class ProbParam {
public:
    ProbParam() = default;

    static ProbParam from_rational(const BigRat& r) {
        ProbParam p;
        p.rational_ = true;
        p.rat_ = r;
        p.val_ = to_double(r);
        return p;
    }

    static ProbParam from_double(double d) {
        ProbParam p;
        p.rational_ = false;
        p.val_ = d;
        return p;
    }

    // "2/3" stays exact, "0.37" does not
    static ProbParam parse(const std::string& s) {
        if (s.find('/') != std::string::npos) return from_rational(parse_rational(s));
        try {
            std::size_t used = 0;
            double d = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return from_double(d);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a probability: '" + s + "'");
        }
    }

    bool is_rational() const { return rational_; }

    const BigRat& rat() const {
        if (!rational_) throw std::invalid_argument("exact rational p required here");
        return rat_;
    }

    double value() const { return val_; }

    // exact test, or an error in the ambiguous float zone
    bool is_half() const {
        if (rational_) return rat_ == BigRat(1, 2);
        if (std::abs(val_ - 0.5) <= 1e-12)
            throw std::invalid_argument(
                "p is a float within 1e-12 of 1/2; pass p as a ratio (e.g. 1/2) so the "
                "formula branch is unambiguous");
        return false;
    }

    std::string str() const { return rational_ ? format_rational(rat_) : std::to_string(val_); }

private:
    bool rational_ = false;
    BigRat rat_;
    double val_ = 0.0;
};

struct ModelConfig {
    Model model = Model::bernoulli;
    std::optional<ProbParam> p;  // bernoulli / preferential / saturation
    int b = 0;                   // bary (binary behaves as b = 2)

    static ModelConfig bernoulli(ProbParam p) { return {Model::bernoulli, p, 0}; }
    static ModelConfig binary() { return {Model::binary, std::nullopt, 2}; }
    static ModelConfig preferential(ProbParam p) { return {Model::preferential, p, 0}; }
    static ModelConfig saturation(ProbParam p) { return {Model::saturation, p, 0}; }
    static ModelConfig bary(int b) { return {Model::bary, std::nullopt, b}; }

    // true for the models that colour each step (parallel vs serial is a coin)
    bool colored() const {
        return model == Model::bernoulli || model == Model::preferential ||
               model == Model::saturation;
    }

    // saturation bound for the bucket-style models, 0 for the colored ones
    int saturation_bound() const {
        if (model == Model::binary) return 2;
        if (model == Model::bary) return b;
        return 0;
    }

    void validate() const {
        if (colored()) {
            if (!p) throw std::invalid_argument(std::string(model_name(model)) + " needs p");
            double v = p->value();
            if (!(v > 0.0 && v < 1.0))
                throw std::invalid_argument("p must lie strictly between 0 and 1");
        } else {
            if (p) throw std::invalid_argument(std::string(model_name(model)) + " takes no p");
            if (model == Model::bary && b < 2)
                throw std::invalid_argument("bary needs b >= 2");
        }
    }
};

}  // namespace spnet
