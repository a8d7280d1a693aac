#include "digitbound/descent.hpp"

#include <algorithm>
#include <random>

namespace digitbound {

namespace {

mpz_class ceil_div(const mpz_class& x, const mpz_class& y) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

mpz_class floor_div(const mpz_class& x, const mpz_class& y) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

void require_length(const ResidueTuple& t, const ModulusContext& ctx, const char* who) {
    if (t.size() != ctx.k)
        throw std::invalid_argument(std::string(who) + ": tuple length " +
                                    std::to_string(t.size()) + " does not match k = " +
                                    std::to_string(ctx.k));
}

void require_matching_base(const TauFunctional& tau, const ModulusContext& ctx,
                           const char* who) {
    if (tau.base() && !(*tau.base() == ctx.base))
        throw std::invalid_argument(std::string(who) + ": tau functional '" + tau.name() +
                                    "' was built for base " + tau.base()->m.get_str() +
                                    ", context has base " + ctx.base.m.get_str());
}

// Zero-padded length-k digit vector of h.
std::vector<mpz_class> padded_digits(const mpz_class& h, const ModulusContext& ctx) {
    DigitVector dv = expand(h, ctx.base);
    if (dv.digits.size() > ctx.k)
        throw std::domain_error("tau_circ: value " + h.get_str() + " needs more than k = " +
                                std::to_string(ctx.k) + " digits");
    std::vector<mpz_class> padded(ctx.k - dv.digits.size(), mpz_class(0));
    padded.insert(padded.end(), dv.digits.begin(), dv.digits.end());
    if (h == 0)
        padded.assign(ctx.k, mpz_class(0));
    return padded;
}

// Odometer over [0, bound]^k, lexicographic. Returns false after the last
// tuple.
bool advance(std::vector<mpz_class>& cur, const mpz_class& bound) {
    for (std::size_t i = cur.size(); i-- > 0;) {
        if (cur[i] < bound) {
            ++cur[i];
            std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(),
                      mpz_class(0));
            return true;
        }
    }
    return false;
}

} // namespace

ModulusContext::ModulusContext(Radix base_, unsigned long k_, mpz_class d_)
    : base(std::move(base_)), k(k_), d(std::move(d_)) {
    if (k < 1)
        throw std::invalid_argument("ModulusContext: k must be >= 1");
    if (d < 1)
        throw std::invalid_argument("ModulusContext: d must be >= 1");
    mpz_pow_ui(span_.get_mpz_t(), base.m.get_mpz_t(), k);
    span_ -= 1;
    if (span_ % d != 0)
        throw std::invalid_argument("ModulusContext: d = " + d.get_str() +
                                    " does not divide m^k - 1 = " + span_.get_str());
}

ResidueTuple::ResidueTuple(std::vector<mpz_class> entries) : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("ResidueTuple: empty tuple");
    bool all_zero = true;
    for (const mpz_class& e : entries_) {
        if (sgn(e) < 0)
            throw std::invalid_argument("ResidueTuple: negative entry " + e.get_str());
        if (e != 0)
            all_zero = false;
    }
    if (all_zero)
        throw std::invalid_argument("ResidueTuple: entries must not all be zero");
}

mpz_class ResidueTuple::sigma() const {
    mpz_class sum = 0;
    for (const mpz_class& e : entries_)
        sum += e;
    return sum;
}

std::string to_string(const ResidueTuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            out += ',';
        out += t[i].get_str();
    }
    return out;
}

TauFunctional TauFunctional::ceil_div_m(const Radix& base) {
    mpz_class m = base.m;
    return TauFunctional(Kind::CeilDivM, "ceil-div-m", base,
                         [m](const std::vector<mpz_class>& xs) {
                             mpz_class sum = 0;
                             for (const mpz_class& x : xs)
                                 sum += ceil_div(x, m);
                             return sum;
                         },
                         true);
}

TauFunctional TauFunctional::floor_div_m_minus_1(const Radix& base) {
    mpz_class divisor = base.m - 1;
    return TauFunctional(Kind::FloorDivMminus1, "floor-div-m-minus-1", base,
                         [divisor](const std::vector<mpz_class>& xs) {
                             mpz_class sum = 0;
                             for (const mpz_class& x : xs)
                                 sum += floor_div(x, divisor);
                             return sum;
                         },
                         true);
}

TauFunctional TauFunctional::custom(std::string name, EvalFn eval) {
    return TauFunctional(Kind::Custom, std::move(name), std::nullopt, std::move(eval), false);
}

mpz_class weighted_sum(const ResidueTuple& t, const ModulusContext& ctx) {
    require_length(t, ctx, "weighted_sum");
    mpz_class acc = 0;
    for (const mpz_class& e : t.entries())
        acc = acc * ctx.base.m + e;
    return acc;
}

bool in_S(const ResidueTuple& t, const ModulusContext& ctx) {
    return weighted_sum(t, ctx) % ctx.d == 0;
}

ResidueTuple rotate(const ResidueTuple& t) {
    std::vector<mpz_class> entries = t.entries();
    std::rotate(entries.begin(), entries.begin() + 1, entries.end());
    return ResidueTuple(std::move(entries));
}

ReduceOutcome reduce_step(const ResidueTuple& t, const ModulusContext& ctx) {
    if (!in_S(t, ctx))
        throw std::domain_error("reduce_step: tuple (" + to_string(t) + ") is not in S");
    if (t[0] < ctx.base.m)
        throw std::domain_error("reduce_step: leading entry " + t[0].get_str() +
                                " is below the base " + ctx.base.m.get_str());
    mpz_class q, b;
    mpz_fdiv_qr(q.get_mpz_t(), b.get_mpz_t(), t[0].get_mpz_t(), ctx.base.m.get_mpz_t());
    std::vector<mpz_class> entries = t.entries();
    entries[0] = b;
    entries[ctx.k - 1] += q; // k = 1 folds the carry back onto the same coordinate
    return ReduceOutcome{ResidueTuple(std::move(entries)), std::move(q), std::move(b)};
}

NormalizeResult normalize(const ResidueTuple& t, const ModulusContext& ctx,
                          const TauFunctional& tau) {
    require_length(t, ctx, "normalize");
    require_matching_base(tau, ctx, "normalize");
    if (tau.kind() == TauFunctional::Kind::Custom && !tau.contract_verified())
        throw std::invalid_argument("normalize: custom tau functional '" + tau.name() +
                                    "' has not passed check_tau_contract");
    if (!in_S(t, ctx))
        throw std::domain_error("normalize: tuple (" + to_string(t) + ") is not in S");

    DescentTrace trace{t, t.sigma(), tau(t.entries()), {}};
    ResidueTuple current = t;
    for (;;) {
        const auto& entries = current.entries();
        auto max_it = std::max_element(entries.begin(), entries.end()); // leftmost maximum
        if (*max_it < ctx.base.m)
            break;
        auto shift = static_cast<unsigned long>(max_it - entries.begin());
        if (shift > 0) {
            std::vector<mpz_class> rotated = entries;
            std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(shift),
                        rotated.end());
            current = ResidueTuple(std::move(rotated));
            trace.steps.push_back(DescentStep{DescentStep::Kind::Rotation, shift, 0, 0, current,
                                              current.sigma(), tau(current.entries())});
        }
        ReduceOutcome outcome = reduce_step(current, ctx);
        current = outcome.after;
        trace.steps.push_back(DescentStep{DescentStep::Kind::Reduction, 0, outcome.q, outcome.b,
                                          current, current.sigma(), tau(current.entries())});
    }
    return NormalizeResult{current, std::move(trace)};
}

mpz_class tau_circ(const TauFunctional& tau, const mpz_class& h, const ModulusContext& ctx) {
    require_matching_base(tau, ctx, "tau_circ");
    if (sgn(h) < 0 || h > ctx.span())
        throw std::domain_error("tau_circ: h = " + h.get_str() + " outside [0, m^k)");
    return tau(padded_digits(h, ctx));
}

mpz_class theorem1_bound(const TauFunctional& tau, const ModulusContext& ctx) {
    require_matching_base(tau, ctx, "theorem1_bound");
    mpz_class best;
    bool first = true;
    for (mpz_class h = ctx.d; h <= ctx.span(); h += ctx.d) {
        mpz_class v = tau(padded_digits(h, ctx));
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

mpz_class min_tau_over_S(const TauFunctional& tau, const ModulusContext& ctx,
                         const mpz_class& entry_bound, unsigned long size_cap) {
    require_matching_base(tau, ctx, "min_tau_over_S");
    if (entry_bound < ctx.base.m - 1)
        throw std::invalid_argument("min_tau_over_S: entry_bound " + entry_bound.get_str() +
                                    " < m - 1 would miss reduced tuples");
    mpz_class box_size;
    mpz_class side = entry_bound + 1;
    mpz_pow_ui(box_size.get_mpz_t(), side.get_mpz_t(), ctx.k);
    if (box_size > size_cap)
        throw SearchTooLarge("min_tau_over_S: search space of " + box_size.get_str() +
                             " tuples exceeds cap " + std::to_string(size_cap));

    std::vector<mpz_class> cur(ctx.k, mpz_class(0));
    mpz_class best;
    bool first = true;
    while (advance(cur, entry_bound)) { // skips the all-zero start
        mpz_class acc = 0;
        for (const mpz_class& e : cur)
            acc = acc * ctx.base.m + e;
        if (acc % ctx.d != 0)
            continue;
        mpz_class v = tau(cur);
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    // S always meets the box: the length-k expansion of d itself lies there.
    return best;
}

ContractReport check_tau_contract(TauFunctional& tau, const ModulusContext& ctx,
                                  unsigned long sample_bound) {
    require_matching_base(tau, ctx, "check_tau_contract");
    if (sample_bound < 1)
        throw std::invalid_argument("check_tau_contract: sample_bound must be >= 1");
    const mpz_class& m = ctx.base.m;
    const unsigned long k = ctx.k;

    // Carry inequality, exhaustive over q, b and the free coordinates.
    std::vector<mpz_class> free_coords(k >= 2 ? k - 1 : 0, mpz_class(0));
    const mpz_class coord_bound(sample_bound);
    for (;;) {
        for (unsigned long q = 1; q <= sample_bound; ++q) {
            for (mpz_class b = 0; b < m; ++b) {
                std::vector<mpz_class> lhs, rhs;
                lhs.reserve(k);
                rhs.reserve(k);
                lhs.push_back(m * q + b);
                rhs.push_back(b);
                lhs.insert(lhs.end(), free_coords.begin(), free_coords.end());
                rhs.insert(rhs.end(), free_coords.begin(), free_coords.end());
                rhs.back() += q; // k = 1: the carry lands back on the first coordinate
                mpz_class lhs_value = tau(lhs);
                mpz_class rhs_value = tau(rhs);
                if (lhs_value < rhs_value)
                    return ContractReport{
                        false, ContractWitness{"carry", std::move(lhs), std::move(rhs),
                                               std::move(lhs_value), std::move(rhs_value)}};
            }
        }
        if (free_coords.empty() || !advance(free_coords, coord_bound))
            break;
    }

    // Permutation symmetry on a fixed-seed sample.
    std::mt19937_64 rng(0xD16B0D15u);
    unsigned long entry_limit =
        sample_bound * (m.fits_ulong_p() ? m.get_ui() : sample_bound);
    for (int draw = 0; draw < 64; ++draw) {
        std::vector<mpz_class> sample(k);
        for (auto& e : sample)
            e = mpz_class(rng() % (entry_limit + 1));
        mpz_class reference = tau(sample);
        std::vector<mpz_class> perm = sample;
        std::sort(perm.begin(), perm.end());
        int budget = 720;
        do {
            mpz_class v = tau(perm);
            if (v != reference)
                return ContractReport{false, ContractWitness{"symmetry", sample, perm,
                                                             reference, std::move(v)}};
        } while (--budget > 0 && std::next_permutation(perm.begin(), perm.end()));
    }

    tau.contract_verified_ = true;
    return ContractReport{true, std::nullopt};
}

} // namespace digitbound
