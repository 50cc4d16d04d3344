#include "smoothpoly/vw.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "smoothpoly/sieve.hpp"

namespace smoothpoly {

namespace {

struct Kahan {
    long double sum = 0;
    long double carry = 0;
    void add(long double v)
    {
        const long double t = v - carry;
        const long double s = sum + t;
        carry = (s - sum) - t;
        sum = s;
    }
};

u64 to_u64_checked(const mpz_class& v, u64 limit, const char* what)
{
    if (v < 0 || v > mpz_class(std::to_string(limit))) throw ScaleError(std::string(what) + " exceeds the budget of " + std::to_string(limit));
    return v.get_ui();
}

// Divisors of v not exceeding cap.
void divisors_up_to(const Factorization& fac, u64 cap, std::vector<u64>& out)
{
    out.assign(1, 1);
    for (const auto& [p, e] : fac) {
        const std::size_t size = out.size();
        for (std::size_t i = 0; i < size; ++i) {
            u64 d = out[i];
            for (unsigned j = 1; j <= e; ++j) {
                if (d > cap / p) break;
                d *= p;
                out.push_back(d);
            }
        }
    }
}

bool above_sqrt(u64 p, long double y) { return static_cast<long double>(p) * p > y; }

}  // namespace

bool inequality_holds(u64 lhs, long double V, long double W)
{
    if (lhs == 0) return true;
    const long double l = static_cast<long double>(lhs);
    return l < V + std::sqrt(l) * std::sqrt(W);
}

bool consequence_holds(u64 lhs, long double V, long double W)
{
    if (lhs == 0) return true;
    return static_cast<long double>(lhs) < V + W / 2 + std::sqrt(V * W + W * W / 4);
}

VWContext::VWContext(VWInstance inst, unsigned threads) : inst_(std::move(inst)), cache_(inst_.f)
{
    const auto& f = inst_.f;
    if (inst_.depth < 1 || inst_.depth > kVWMaxDepth) throw DomainError("depth must be between 1 and " + std::to_string(kVWMaxDepth));
    if (!(inst_.y >= 1)) throw DomainError("y >= 1 required");
    if (inst_.x <= inst_.z) throw DomainError("x > z required");
    if (inst_.x > kVWMaxX) throw ScaleError("x exceeds the budget of " + std::to_string(kVWMaxX));
    T0_ = t0(f);
    if (inst_.z <= T0_) throw DomainError("hypothesis z > T0(f) = " + std::to_string(T0_) + " violated");

    fx_ = to_u64_checked(f.eval(static_cast<long>(inst_.x)), kVWMaxFx, "f(x)");
    fz_ = f.eval(static_cast<long>(inst_.z)).get_ui();
    log_fz_ = std::log(static_cast<long double>(fz_));
    log_ratio_ = fz_ > static_cast<u64>(inst_.x) ? std::log(static_cast<long double>(fz_) / inst_.x) : 0;

    const u64 plimit = std::min<u64>(prime_limit(inst_.y), fx_);
    plimit_ = plimit;
    if (plimit > kVWMaxPrime) throw ScaleError("min(y, f(x)) exceeds the prime budget of " + std::to_string(kVWMaxPrime));
    const u64 h = static_cast<u64>(inst_.h());

    SieveOptions opts;
    opts.threads = threads;
    opts.cache = &cache_;
    const auto table = sieve_range(f, inst_.z + 1, inst_.x, inst_.y, opts);
    cnt_.assign(h + 1, 0);
    std::vector<u64> divs;
    for (i64 n = inst_.z + 1; n <= inst_.x; ++n) {
        if (!table.smooth(n)) continue;
        const u64 v = f.eval(static_cast<long>(n)).get_ui();
        smooth_values_.push_back(v);
        divisors_up_to(factorize(v), h, divs);
        for (u64 d : divs) ++cnt_[d];
    }

    for (u64 p : primes_up_to(static_cast<std::uint32_t>(std::max<u64>(plimit, 2)))) {
        if (p > plimit) break;
        const long double lp = std::log(static_cast<long double>(p));
        u64 k = p;
        for (unsigned v = 1;; ++v) {
            pp_.push_back({k, p, v, lp});
            if (k > fx_ / p) break;
            k *= p;
        }
    }
    std::sort(pp_.begin(), pp_.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
    suffix_.assign(pp_.size() + 1, 0);
    Kahan acc;
    for (std::size_t i = pp_.size(); i-- > 0;) {
        acc.add(pp_[i].log_p * static_cast<long double>(cache_.omega_prime_power(pp_[i].p, pp_[i].v)));
        suffix_[i] = acc.sum;
    }

    spf_.assign(h + 1, 0);
    for (u64 i = 2; i <= h; ++i)
        if (spf_[i] == 0)
            for (u64 j = i; j <= h; j += i)
                if (spf_[j] == 0) spf_[j] = i;
}

void VWContext::require_ratio() const
{
    if (!(log_ratio_ > 0)) throw DomainError("hypothesis f(z) > x violated");
}

u64 VWContext::omega_times(u64 K, u64 p, unsigned v) const
{
    u64 result = 1;
    unsigned a_p = 0;
    while (K > 1) {
        const u64 q = spf_[K];
        unsigned a = 0;
        while (K % q == 0) {
            K /= q;
            ++a;
        }
        if (q == p)
            a_p = a;
        else
            result *= cache_.omega_prime_power(q, a);
        if (result == 0) return 0;
    }
    return a_p + v == 0 ? result : result * cache_.omega_prime_power(p, a_p + v);
}

long double VWContext::tail_weight(u64 K, u64 t) const
{
    const auto start = std::upper_bound(pp_.begin(), pp_.end(), t, [](u64 value, const auto& e) { return value < e.k; });
    if (start == pp_.end()) return 0;
    const u64 base = omega_times(K, 0, 0);
    if (base == 0) return 0;
    // Primes dividing K need the joint count ω(K p^v); the rest factor as ω(K) ω(p^v).
    std::vector<std::pair<u64, unsigned>> parts;
    for (u64 r = K; r > 1;) {
        const u64 q = spf_[r];
        unsigned a = 0;
        while (r % q == 0) {
            r /= q;
            ++a;
        }
        parts.emplace_back(q, a);
    }
    long double coprime = suffix_[static_cast<std::size_t>(start - pp_.begin())];
    Kahan joint;
    for (auto [q, a] : parts) {
        const long double lq = std::log(static_cast<long double>(q));
        u64 k = q;
        for (unsigned v = 1;; ++v) {
            if (k > t && k <= fx_ && q <= plimit_) {
                coprime -= lq * static_cast<long double>(cache_.omega_prime_power(q, v));
                joint.add(lq * static_cast<long double>(omega_times(K, q, v)));
            }
            if (k > fx_ / q) break;
            k *= q;
        }
    }
    return static_cast<long double>(base) * coprime + joint.sum;
}

std::vector<long double> VWContext::convolve_y(const std::vector<long double>& a) const
{
    const u64 h = static_cast<u64>(inst_.h());
    std::vector<long double> b(h + 1, 0);
    for (u64 j = 1; j <= h; ++j) {
        if (a[j] == 0) continue;
        for (const auto& e : pp_) {
            if (e.k > h / j) break;
            b[j * e.k] += a[j] * e.log_p;
        }
    }
    return b;
}

VWReport VWContext::prop21() const
{
    VWReport r;
    r.depth = 0;
    r.T0 = T0_;
    r.log_fz = log_fz_;
    r.log_ratio = log_ratio_;
    r.lhs = smooth_values_.size();
    const u64 h = static_cast<u64>(inst_.h());
    Kahan V, W, Vh, Wh;
    std::vector<std::pair<u64, long double>> small;
    for (u64 v : smooth_values_) {
        long double upper = 0, lower = 0, upper_h = 0;
        small.clear();
        for (const auto& [p, e] : factorize(v)) {
            const long double lp = std::log(static_cast<long double>(p));
            if (above_sqrt(p, inst_.y)) {
                upper += e * lp;
                u64 k = 1;
                for (unsigned j = 1; j <= e && k <= h / p; ++j) {
                    k *= p;
                    upper_h += lp;
                }
            } else {
                lower += e * lp;
                u64 k = p;
                for (unsigned j = 1; j <= e; ++j) {
                    small.emplace_back(k, lp);
                    if (k > (~u64{0}) / p) break;
                    k *= p;
                }
            }
        }
        V.add(upper);
        Vh.add(upper_h);
        W.add(lower * lower);
        long double within = 0;
        for (const auto& [k1, l1] : small)
            for (const auto& [k2, l2] : small) {
                const u64 g = gcd(k1, k2);
                const u64 q = k1 / g;
                if (q <= h / k2) within += l1 * l2;
            }
        Wh.add(within);
    }
    r.V = V.sum / log_fz_;
    r.W = W.sum / (log_fz_ * log_fz_);
    r.V_within_h = Vh.sum / log_fz_;
    r.W_within_h = Wh.sum / (log_fz_ * log_fz_);
    r.lhs_empty = r.lhs == 0;
    r.verdict_2_1 = inequality_holds(r.lhs, r.V, r.W);
    r.verdict_2_2 = consequence_holds(r.lhs, r.V, r.W);
    return r;
}

VWReport VWContext::prop32(unsigned depth) const
{
    require_ratio();
    if (depth < 1 || depth > kVWMaxDepth) throw DomainError("depth must be between 1 and " + std::to_string(kVWMaxDepth));
    const u64 h = static_cast<u64>(inst_.h());
    const long double L = log_ratio_;
    VWReport r;
    r.depth = depth;
    r.T0 = T0_;
    r.log_fz = log_fz_;
    r.log_ratio = L;
    r.lhs = smooth_values_.size();

    std::vector<long double> upper(h + 1, 0), pair_lo(h + 1, 0), pair_y(h + 1, 0), unit(h + 1, 0);
    unit[1] = 1;
    std::size_t within = 0;
    while (within < pp_.size() && pp_[within].k <= h) {
        if (above_sqrt(pp_[within].p, inst_.y)) upper[pp_[within].k] += pp_[within].log_p;
        ++within;
    }
    for (std::size_t i = 0; i < within; ++i)
        for (std::size_t j = 0; j < within; ++j) {
            const auto& a = pp_[i];
            const auto& b = pp_[j];
            u64 K;
            if (a.p == b.p)
                K = std::max(a.k, b.k);
            else if (a.k <= h / b.k)
                K = a.k * b.k;
            else
                continue;
            const long double w = a.log_p * b.log_p;
            pair_y[K] += w;
            if (!above_sqrt(a.p, inst_.y) && !above_sqrt(b.p, inst_.y)) pair_lo[K] += w;
        }

    auto head = [&](const std::vector<long double>& weights) {
        Kahan s;
        for (u64 K = 1; K <= h; ++K)
            if (weights[K] != 0 && cnt_[K] != 0) s.add(weights[K] * static_cast<long double>(cnt_[K]));
        return s.sum;
    };
    auto tails = [&](const std::vector<long double>& weights) {
        Kahan s;
        for (u64 K = 1; K <= h; ++K)
            if (weights[K] != 0) s.add(weights[K] * tail_weight(K, h / K));
        return s.sum;
    };

    const long double lv = log_fz_, lw = log_fz_ * log_fz_;
    std::vector<long double> b = upper, c = pair_lo, a = unit, d = pair_y;
    long double power = 1;  // L^{j-1}
    for (unsigned j = 1; j <= depth; ++j) {
        r.V_plus.push_back(head(b) / (lv * power));
        r.W_plus.push_back(head(c) / (lw * power));
        r.V_minus.push_back(tails(a) / (lv * power));
        if (j >= 2) {
            r.W_minus.push_back(tails(d) / (lw * power));
            d = convolve_y(d);
        }
        if (j < depth) {
            b = convolve_y(b);
            c = convolve_y(c);
            a = convolve_y(a);
        }
        power *= L;
    }

    // W_1^-: all pairs of prime powers up to f(x) with lcm above h.
    Kahan all;
    {
        long double total = suffix_.empty() ? 0 : suffix_[0];
        // Pairs of powers of one prime have lcm p^max(v1,v2), not the product.
        Kahan correction;
        std::map<u64, std::vector<u64>> by_prime;
        for (const auto& e : pp_) by_prime[e.p].push_back(e.v);
        for (const auto& [p, vs] : by_prime) {
            const long double lp = std::log(static_cast<long double>(p));
            long double single = 0, same = 0;
            for (unsigned v : vs) {
                const auto w = static_cast<long double>(cache_.omega_prime_power(p, v));
                single += w;
                same += (2.0L * v - 1) * w;
            }
            correction.add(lp * lp * (same - single * single));
        }
        all.add(total * total);
        all.add(correction.sum);
        for (std::size_t x = 0; x < within; ++x)
            for (std::size_t y = 0; y < within; ++y) {
                const auto& e1 = pp_[x];
                const auto& e2 = pp_[y];
                u64 ell;
                if (e1.p == e2.p)
                    ell = std::max(e1.k, e2.k);
                else if (e1.k <= h / e2.k)
                    ell = e1.k * e2.k;
                else
                    continue;
                const auto fac = factorize(ell);
                all.add(-e1.log_p * e2.log_p * static_cast<long double>(cache_.omega_of_factors(fac)));
            }
    }
    r.W_minus.insert(r.W_minus.begin(), all.sum / lw);

    Kahan vt, wt;
    vt.add(r.V_plus.back());
    wt.add(r.W_plus.back());
    for (auto v : r.V_minus) vt.add(v);
    for (auto w : r.W_minus) wt.add(w);
    r.V = vt.sum;
    r.W = wt.sum;
    r.lhs_empty = r.lhs == 0;
    r.verdict_2_1 = inequality_holds(r.lhs, r.V, r.W);
    r.verdict_2_2 = consequence_holds(r.lhs, r.V, r.W);
    if (depth >= 2) {
        bool mv = true, mw = true;
        for (unsigned j = 1; j < depth; ++j) {
            if (r.V_plus[j - 1] > 0 && !(r.V_plus[j - 1] < r.V_plus[j] + r.V_minus[j])) mv = false;
            if (r.W_plus[j - 1] > 0 && !(r.W_plus[j - 1] < r.W_plus[j] + r.W_minus[j])) mw = false;
        }
        r.monotone_V = mv;
        r.monotone_W = mw;
    }
    return r;
}

Lemma31Report VWContext::lemma31(u64 kappa) const
{
    require_ratio();
    const u64 h = static_cast<u64>(inst_.h());
    if (kappa < 1 || kappa > h) throw DomainError("kappa must satisfy 1 <= kappa <= h");
    Lemma31Report r;
    r.kappa = kappa;
    r.lhs = cnt_[kappa];
    Kahan head;
    for (const auto& e : pp_) {
        if (e.k > h / kappa) break;
        head.add(e.log_p * static_cast<long double>(cnt_[kappa * e.k]));
    }
    r.head = head.sum / log_ratio_;
    r.tail = tail_weight(kappa, h / kappa) / log_ratio_;
    r.rhs = r.head + r.tail;
    r.lhs_empty = r.lhs == 0;
    r.verdict = r.lhs == 0 || static_cast<long double>(r.lhs) < r.rhs;
    return r;
}

VWReport vw_prop21(const VWInstance& inst) { return VWContext(inst).prop21(); }

VWReport vw_prop32(const VWInstance& inst)
{
    VWContext ctx(inst);
    return ctx.prop32(inst.depth);
}

Lemma31Report lemma31_check(const VWInstance& inst, u64 kappa) { return VWContext(inst).lemma31(kappa); }

Lemma41Report lemma41_sums(const FactoredPoly& f, u64 x, long double y)
{
    if (x < 1) throw DomainError("x >= 1 required");
    if (x > 10000000) throw ScaleError("x exceeds the budget of 10^7");
    Lemma41Report r;
    const long double ly = std::log(std::max(y, 1.0L));
    r.cmp_all = f.g() * ly;
    r.cmp_upper = f.g() * ly / 2;
    r.cmp_log = f.g() * ly * ly / 2;
    r.cmp_plain = ly > 0 ? y * std::log(static_cast<long double>(x)) / ly : 0;
    const u64 plimit = std::min<u64>(prime_limit(y), x);
    if (plimit < 2) return r;
    RootCache cache(f);
    Kahan s1, s2, s3, s4;
    for (u64 p : primes_up_to(static_cast<std::uint32_t>(plimit))) {
        if (p > plimit) break;
        const long double lp = std::log(static_cast<long double>(p));
        const bool upper = above_sqrt(p, y);
        u64 k = p;
        for (unsigned v = 1;; ++v) {
            const auto w = static_cast<long double>(cache.omega_prime_power(p, v));
            const long double term = lp * w / static_cast<long double>(k);
            s1.add(term);
            if (upper) s2.add(term);
            s3.add((2.0L * v - 1) * lp * term);
            s4.add(lp * w);
            if (k > x / p) break;
            k *= p;
        }
    }
    r.sum_all = s1.sum;
    r.sum_upper = s2.sum;
    r.sum_log = s3.sum;
    r.sum_plain = s4.sum;
    return r;
}

}  // namespace smoothpoly
