#ifndef KELLER_SUITE_HPP
#define KELLER_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "keller/druzkowski.hpp"
#include "keller/polymap.hpp"

namespace keller {

struct CriterionOutcome {
    std::string name;
    bool passed = false;
    bool contradiction = false;  // a theory-guaranteed fact failed
    std::string detail;
};

struct SuiteConfig {
    std::uint64_t seed = 7;
    int keller_maps = 200;       // gen_triangular_keller corpus size
    int druzkowski_specs = 200;  // gen_triangular_druzkowski corpus size
    int corollary4_specs = 100;  // random (incl. non-Keller) Druzkowski specs
    int theorem1_maps = 50;      // homogeneous-H Keller maps
    int points_per_map = 20;     // line-certificate points per map
    int lemma2_maps = 100;       // scrambled maps for the conjugation suite
};

// Runs the full property suite; one outcome per criterion, stable order.
std::vector<CriterionOutcome> run_verification_suite(const SuiteConfig& config);

// Corpus shared by the bound/agreement criteria: alternating
// (n, d) in {2,3,4} x {2,3}, deterministic in the seed.
std::vector<CorpusEntry> build_keller_corpus(std::uint64_t seed, int count);
std::vector<DruzkowskiSpec> build_druzkowski_corpus(std::uint64_t seed, int count);

}  // namespace keller

#endif
