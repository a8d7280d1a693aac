#ifndef DIGITBOUND_DESCENT_HPP
#define DIGITBOUND_DESCENT_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "digitbound/digits.hpp"

namespace digitbound {

// Parameters of the congruence a_1 m^(k-1) + a_2 m^(k-2) + ... + a_k == 0
// (mod d). The divisor d must divide m^k - 1 exactly; that is what makes
// the weighted sum invariant under cyclic rotation of the tuple.
struct ModulusContext {
    Radix base;
    unsigned long k;
    mpz_class d;

    ModulusContext(Radix base_, unsigned long k_, mpz_class d_);

    // m^k - 1
    const mpz_class& span() const { return span_; }

private:
    mpz_class span_;
};

// A k-tuple of nonnegative integers, not all zero. Membership in the
// congruence set S is a property of a tuple together with a context and is
// queried through in_S, never stored.
class ResidueTuple {
public:
    explicit ResidueTuple(std::vector<mpz_class> entries);

    const std::vector<mpz_class>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const mpz_class& operator[](std::size_t i) const { return entries_[i]; }

    // Coordinate sum; the strictly decreasing measure of the descent.
    mpz_class sigma() const;

    bool operator==(const ResidueTuple& other) const { return entries_ == other.entries_; }

private:
    std::vector<mpz_class> entries_;
};

std::string to_string(const ResidueTuple& t);

class TauFunctional;
struct ContractReport;
ContractReport check_tau_contract(TauFunctional& tau, const ModulusContext& ctx,
                                  unsigned long sample_bound);

// Symmetric nonnegative-integer-valued functional on k-tuples. The descent
// transfers carries from the first coordinate to the last, so a functional
// is usable exactly when it satisfies the carry inequality
//
//     tau(m*q + b, x_2, ..., x_k) >= tau(b, x_2, ..., x_k + q)
//
// for all q >= 1 and 0 <= b < m. The two built-ins carry their base and a
// verified flag; custom functionals start unverified and normalize refuses
// them until check_tau_contract has passed in the same run.
class TauFunctional {
public:
    enum class Kind { CeilDivM, FloorDivMminus1, Custom };
    using EvalFn = std::function<mpz_class(const std::vector<mpz_class>&)>;

    // sum of ceil(x_j / m)
    static TauFunctional ceil_div_m(const Radix& base);
    // sum of floor(x_j / (m - 1)); for m = 2 this degenerates to the
    // coordinate sum.
    static TauFunctional floor_div_m_minus_1(const Radix& base);
    static TauFunctional custom(std::string name, EvalFn eval);

    mpz_class operator()(const std::vector<mpz_class>& xs) const { return eval_(xs); }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::optional<Radix>& base() const { return base_; }
    bool contract_verified() const { return contract_verified_; }

private:
    TauFunctional(Kind kind, std::string name, std::optional<Radix> base, EvalFn eval,
                  bool verified)
        : kind_(kind), name_(std::move(name)), base_(std::move(base)), eval_(std::move(eval)),
          contract_verified_(verified) {}

    Kind kind_;
    std::string name_;
    std::optional<Radix> base_;
    EvalFn eval_;
    bool contract_verified_;

    friend struct ContractReport check_tau_contract(TauFunctional&, const ModulusContext&,
                                                    unsigned long);
};

// One step of the descent, annotated with the tuple it produced and the
// sigma / tau values after the step.
struct DescentStep {
    enum class Kind { Rotation, Reduction };

    Kind kind;
    unsigned long rotations = 0; // Rotation: number of left rotations applied
    mpz_class q;                 // Reduction: a_1 = m*q + b
    mpz_class b;
    ResidueTuple after;
    mpz_class sigma_after;
    mpz_class tau_after;
};

struct DescentTrace {
    ResidueTuple initial;
    mpz_class sigma_initial;
    mpz_class tau_initial;
    std::vector<DescentStep> steps;

    const ResidueTuple& final_tuple() const {
        return steps.empty() ? initial : steps.back().after;
    }
};

struct NormalizeResult {
    ResidueTuple reduced;
    DescentTrace trace;
};

// a_1 m^(k-1) + a_2 m^(k-2) + ... + a_k
mpz_class weighted_sum(const ResidueTuple& t, const ModulusContext& ctx);

// True iff the weighted sum vanishes mod d. (Not-all-zero is a type
// invariant of ResidueTuple.)
bool in_S(const ResidueTuple& t, const ModulusContext& ctx);

// (a_1, ..., a_k) -> (a_2, ..., a_k, a_1). Preserves S-membership.
ResidueTuple rotate(const ResidueTuple& t);

struct ReduceOutcome {
    ResidueTuple after;
    mpz_class q;
    mpz_class b;
};

// Split a_1 = m*q + b with q >= 1, 0 <= b < m, and move the carry q onto
// the last coordinate: (a_1, ..., a_k) -> (b, a_2, ..., a_k + q). Requires
// a_1 >= m and the tuple in S; keeps S-membership and drops sigma by
// exactly (m-1)*q. For k = 1 the first and last coordinate coincide and
// the result is (b + q).
ReduceOutcome reduce_step(const ResidueTuple& t, const ModulusContext& ctx);

// Descend until every entry is < m: rotate the leftmost maximal entry to
// the front, then reduce. Terminates because sigma is a nonnegative
// integer that strictly decreases at each reduction.
NormalizeResult normalize(const ResidueTuple& t, const ModulusContext& ctx,
                          const TauFunctional& tau);

// tau evaluated on the zero-padded length-k base-m digit vector of h,
// for 0 <= h < m^k.
mpz_class tau_circ(const TauFunctional& tau, const mpz_class& h, const ModulusContext& ctx);

// min over t in [1, (m^k-1)/d] of tau_circ(t*d), by exhaustive enumeration.
// This is the lower bound that tau attains on all of S.
mpz_class theorem1_bound(const TauFunctional& tau, const ModulusContext& ctx);

struct SearchTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned long kDefaultSearchCap = 10'000'000;

// Brute-force oracle: exhaustive minimum of tau over all tuples in S with
// every entry <= entry_bound. Requires entry_bound >= m - 1 so that every
// fully reduced tuple lies inside the search box. Throws SearchTooLarge
// when (entry_bound + 1)^k exceeds size_cap.
mpz_class min_tau_over_S(const TauFunctional& tau, const ModulusContext& ctx,
                         const mpz_class& entry_bound,
                         unsigned long size_cap = kDefaultSearchCap);

struct ContractWitness {
    std::string kind; // "carry" or "symmetry"
    std::vector<mpz_class> lhs_args;
    std::vector<mpz_class> rhs_args;
    mpz_class lhs_value;
    mpz_class rhs_value;
};

struct ContractReport {
    bool ok = false;
    std::optional<ContractWitness> witness;
};

// Exhaustively check the carry inequality for q in [1, sample_bound],
// b in [0, m-1] and the free coordinates in [0, sample_bound]^(k-1), plus
// permutation symmetry on a fixed-seed sample of tuples. On success marks
// tau as contract-verified; on failure returns the first witness found.
ContractReport check_tau_contract(TauFunctional& tau, const ModulusContext& ctx,
                                  unsigned long sample_bound);

} // namespace digitbound

#endif // DIGITBOUND_DESCENT_HPP
