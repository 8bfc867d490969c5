#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tvspec/seminorm_calculus.hpp"

namespace tvspec {

enum class RadiusKind { L, BB, C, NN, NB };

std::string to_string(RadiusKind kind);

/// Bracket for limsup_n t_n^(1/n) together with the two equivalent
/// characterizations of the numerical root lemma, each exposed as its own
/// numeric probe:
///   direct:       extrapolation of the root sequence t_n^(1/n) itself,
///   convergence:  inf{ nu > 0 : t_n / nu^n -> 0 },
///   boundedness:  inf{ nu > 0 : (t_n / nu^n) bounded }.
///
/// The main bracket is the conservative merge of the tail running maximum of
/// n-th roots with a least-squares tail fit of log t_n against (1, n, log n);
/// ties take the wider interval. The log n regressor absorbs polynomial
/// prefactors, which a two-term fit provably mislocates (t_n = n^2 (1/2)^n
/// would otherwise bracket above 1/2).
struct LimsupBracket {
    ExtReal lower, upper;
    bool exact = false; // tail was exactly geometric, zero, or infinite

    ExtReal direct_lo, direct_hi;
    ExtReal convergence_lo, convergence_hi;
    ExtReal boundedness_lo, boundedness_hi;
};

/// t[k] holds t_{k+1}; requires at least 8 entries (InsufficientData below).
LimsupBracket limsup_root(const std::vector<ExtReal>& t);

/// One of the five spectral radii, with bracket semantics: a sup truncated to
/// finitely many probes or seminorms certifies only its lower side, an inf
/// over candidate families only its upper side; closed-form collapses set
/// both flags and `exact`.
struct RadiusEstimate {
    RadiusKind kind = RadiusKind::L;
    ExtReal lower, upper;
    bool lower_certified = false;
    bool upper_certified = false;
    bool exact = false;
    std::vector<std::pair<long, ExtReal>> iterates; // merged trace actually used
    std::string method;
};

struct RadiusAux {
    std::vector<SparseVector> probes;               // L: strong-convergence probes
    std::optional<SeminormFamily> bounded_sets;     // BB: family of box functionals
    std::vector<SeminormFamily> candidate_families; // NN: candidate bases (defaults to P)
};

RadiusEstimate estimate_radius(RadiusKind kind, const OperatorPtr& T, const SeminormFamily& P,
                               const RadiusAux& aux, long depth, int level);

/// All five at once (shares nothing but is convenient for reports).
std::vector<RadiusEstimate> estimate_all_radii(const OperatorPtr& T, const SeminormFamily& P,
                                               const RadiusAux& aux, long depth, int level);

/// Checks the chain r_l <= r_bb <= r_c <= r_nn <= r_nb at the level bracket
/// semantics make assertable: a certified lower bound of a smaller radius
/// must not exceed a certified upper bound of a larger one.
struct OrderingReport {
    bool consistent = true;
    std::vector<std::string> violations;
};

OrderingReport verify_ordering(const std::vector<RadiusEstimate>& estimates);

/// Exact submultiplicativity / subadditivity of the equicontinuous radius on
/// commuting diagonal-like operators. Throws NonCommuting when a sampled
/// commutator probe is nonzero.
struct ArithmeticReport {
    ExtReal rc_s, rc_t, rc_product, rc_sum;
    bool product_ok = false;
    bool sum_ok = false;
};

ArithmeticReport radius_arithmetic_check(const OperatorPtr& S, const OperatorPtr& T,
                                         std::uint64_t seed);

enum class FastNullVerdict { Holds, PreconditionViolation, Fails };

/// Verifies that (T^n x_n) is fast null (alpha^n T^n x_n -> 0 for alpha in
/// {2, 10}) given a fast-null input sequence; a non-fast-null x_seq is
/// reported as a precondition violation, not an exception.
FastNullVerdict fast_null_check(const OperatorPtr& T,
                                const std::function<SparseVector(long)>& x_seq, long depth);

/// Exact sup of |diagonal entries| for diagonal-like trees (scan plus tail
/// bounds); nullopt when the tail bound cannot be certified below the scan
/// maximum.
std::optional<ExtReal> exact_diagonal_sup(const OperatorPtr& op);

} // namespace tvspec
