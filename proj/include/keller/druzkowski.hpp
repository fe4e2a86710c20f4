#ifndef KELLER_DRUZKOWSKI_HPP
#define KELLER_DRUZKOWSKI_HPP

#include <cstdint>
#include <string>

#include "keller/polymap.hpp"

namespace keller {

// Power-linear map F = x + (Ax)^{*d}: component i is x_i + (A^i x)^d.
struct DruzkowskiSpec {
    RationalMatrix A;
    int d;

    std::string to_text() const;  // "d: <d>" then the matrix rows
    static DruzkowskiSpec parse(const std::string& text);
};

PolyMap expand(const DruzkowskiSpec& spec);

// JH from the closed form d * diag((A^i x)^{d-1}) * A.
PolyMatrix structural_jacobian(const DruzkowskiSpec& spec);

// Subspace equality constant_kernel(JH) = ker A, decided by mutual
// containment under exact elimination. Inequality contradicts the theory.
bool kernel_equality_check(const DruzkowskiSpec& spec);

struct KellerFactsReport {
    bool keller = false;
    bool jh_nilpotent = false;
    Rational det_a;
    int rank_a = 0;
    bool passed = false;  // all applicable assertions held

    std::string to_text() const;
};

// If Keller: JH nilpotent, |A| = 0 and rank A <= n-1 must hold; conversely
// nilpotent JH forces Keller. A failed assertion throws TheoremContradiction.
KellerFactsReport keller_facts_check(const DruzkowskiSpec& spec);

// A generated test map together with how to regenerate it.
struct CorpusEntry {
    PolyMap map;
    std::string provenance;  // generator name, parameters and seed
    bool expected_keller;
};

CorpusEntry corpus_entry_triangular_keller(int n, int d, std::uint64_t seed);
CorpusEntry corpus_entry_triangular_druzkowski(int n, int d, std::uint64_t seed);

// Deterministic corpus generators (identical arguments give bit-identical
// output; the raw engine stream is used directly, never a distribution).
DruzkowskiSpec gen_triangular_druzkowski(int n, int d, std::uint64_t seed,
                                         int coeff_range = 3);
PolyMap gen_triangular_keller(int n, int d, std::uint64_t seed,
                              int terms_per_component = 2);
DruzkowskiSpec gen_random_druzkowski(int n, int d, std::uint64_t seed,
                                     int coeff_range = 3);
// Random invertible integer matrix with entries in [-range, range].
RationalMatrix gen_invertible_matrix(int n, std::uint64_t seed, int range = 2);

}  // namespace keller

#endif
