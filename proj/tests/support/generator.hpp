#pragma once

#include "sltl/formula.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sltl::testing {

enum class Shape {
    Psl,     // no X/U
    PureLtl, // no modality, no sharpening atom
    LtlPsl,  // no X/U below a modality
    Ptls5,   // modalities over * only, no sharpening atom
    Full,    // anything
};

struct GenConfig {
    Shape shape = Shape::LtlPsl;
    int max_depth = 4;
    std::vector<std::string> props{"p", "q"};
    std::vector<std::string> standpoints{"s", "t"};
    /// Sharpening atom occurrences allowed per formula.
    int max_sharper = 1;
    /// Also allow `*` as a modality index.
    bool universal_modality = true;
};

/// Seeded random formulas; the same seed yields the same sequence.
class FormulaGen {
public:
    FormulaGen(GenConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), rng_(seed) {}

    Formula next();

private:
    Formula gen(int depth, bool under_modality);
    Formula atom();
    Standpoint pick_standpoint(bool allow_universal);
    int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    GenConfig cfg_;
    std::mt19937_64 rng_;
    int sharper_left_ = 0;
};

} // namespace sltl::testing
