// Literal transcriptions of the V/W sums: every integer k is visited, Λ(k)
// comes from a smallest-prime-factor table, inner counts loop over n, and ω_f
// is a residue scan modulo each prime-power part.
#include <cmath>
#include <map>
#include <numeric>

#include "smoothpoly/sieve.hpp"
#include "smoothpoly/vw.hpp"

namespace smoothpoly::oracle {

namespace {

struct Literal {
    const VWInstance& inst;
    u64 F = 0;
    u64 h = 0;
    long double log_fz = 0;
    long double L = 0;
    std::vector<u64> smooth_values;  // f(n) for smooth n in (z, x]
    std::vector<long double> lam;    // Λ(k), k <= F
    std::vector<u64> top;            // P+(k) for prime powers, else 0
    std::map<u64, u64> scanned;
    std::vector<std::int64_t> scanned_pp;  // ω by residue scan for prime powers <= F

    explicit Literal(const VWInstance& in) : inst(in)
    {
        if (inst.x <= inst.z || inst.z <= t0(inst.f)) throw DomainError("hypothesis x > z > T0(f) violated");
        const mpz_class fx = inst.f.eval(static_cast<long>(inst.x));
        if (fx > 200000) throw ScaleError("literal oracle: f(x) > 2e5");
        F = fx.get_ui();
        h = static_cast<u64>(inst.h());
        if (h > 400) throw ScaleError("literal oracle: h > 400");
        const u64 fz = inst.f.eval(static_cast<long>(inst.z)).get_ui();
        log_fz = std::log(static_cast<long double>(fz));
        L = fz > static_cast<u64>(inst.x) ? std::log(static_cast<long double>(fz) / inst.x) : 0;
        for (i64 n = inst.z + 1; n <= inst.x; ++n) {
            const mpz_class v = inst.f.eval(static_cast<long>(n));
            const mpz_class big = largest_prime_factor_trial(v);
            if (v != 0 && big <= mpz_class(static_cast<unsigned long>(prime_limit(inst.y)))) smooth_values.push_back(v.get_ui());
        }
        scanned_pp.assign(F + 1, -1);
        lam.assign(F + 1, 0);
        top.assign(F + 1, 0);
        // Smallest prime factors; k is a prime power iff dividing out its
        // smallest prime leaves 1.
        std::vector<u64> spf(F + 1, 0);
        for (u64 p = 2; p <= F; ++p) {
            if (spf[p]) continue;
            for (u64 j = p; j <= F; j += p)
                if (!spf[j]) spf[j] = p;
        }
        for (u64 k = 2; k <= F; ++k) {
            u64 r = k;
            while (r % spf[k] == 0) r /= spf[k];
            if (r == 1) {
                lam[k] = std::log(static_cast<long double>(spf[k]));
                top[k] = spf[k];
            }
        }
    }

    bool le_y(u64 k) const { return top[k] != 0 && top[k] <= prime_limit(inst.y); }
    bool le_sqrt(u64 k) const { return le_y(k) && static_cast<long double>(top[k]) * top[k] <= inst.y; }
    bool above_sqrt(u64 k) const { return le_y(k) && static_cast<long double>(top[k]) * top[k] > inst.y; }

    u64 count(u64 kappa) const
    {
        u64 c = 0;
        for (u64 v : smooth_values) c += v % kappa == 0;
        return c;
    }

    u64 omega_scan(u64 k)
    {
        u64 result = 1;
        for (const auto& [p, e] : k == 1 ? Factorization{} : factorize(k)) {
            const u64 q = *checked_pow(p, e);
            auto it = scanned.find(q);
            if (it == scanned.end()) {
                const auto c = inst.f.product().reduce_mod(q);
                u64 roots = 0;
                for (u64 u = 0; u < q; ++u) {
                    if (q < (u64{1} << 32)) {
                        u64 acc = 0;
                        for (auto cit = c.rbegin(); cit != c.rend(); ++cit) acc = (acc * u + *cit) % q;
                        roots += acc == 0;
                    } else {
                        u128 acc = 0;
                        for (auto cit = c.rbegin(); cit != c.rend(); ++cit) acc = (acc * u + *cit) % q;
                        roots += acc == 0;
                    }
                }
                it = scanned.emplace(q, roots).first;
            }
            result *= it->second;
        }
        return result;
    }

    u64 scan_prime_power(u64 q)
    {
        if (scanned_pp[q] < 0) scanned_pp[q] = static_cast<std::int64_t>(omega_scan(q));
        return static_cast<u64>(scanned_pp[q]);
    }

    // ω([k1, k2]) for prime powers k1, k2 <= F.
    u64 omega_lcm(u64 k1, u64 k2)
    {
        if (top[k1] == top[k2]) return scan_prime_power(std::max(k1, k2));
        return scan_prime_power(k1) * scan_prime_power(k2);
    }

    // Indices k <= limit with nonzero summand under `keep`.
    template <class Pred>
    std::vector<u64> list(u64 limit, Pred keep) const
    {
        std::vector<u64> out;
        for (u64 k = 1; k <= std::min(limit, F); ++k)
            if (lam[k] != 0 && keep(k)) out.push_back(k);
        return out;
    }
};

}  // namespace

VWReport vw_literal(const VWInstance& inst)
{
    if (inst.depth > 2) throw ScaleError("literal oracle: depth > 2");
    Literal lit(inst);
    VWReport r;
    r.lhs = lit.smooth_values.size();
    r.log_fz = lit.log_fz;
    r.log_ratio = lit.L;
    r.depth = inst.depth;
    const auto hi = lit.list(lit.F, [&](u64 k) { return lit.above_sqrt(k); });
    const auto lo = lit.list(lit.F, [&](u64 k) { return lit.le_sqrt(k); });
    const auto all = lit.list(lit.F, [&](u64 k) { return lit.le_y(k); });
    const long double lw = lit.log_fz * lit.log_fz;

    long double V = 0, Vh = 0, W = 0, Wh = 0;
    for (u64 k : hi) {
        const long double term = lit.lam[k] * lit.count(k);
        V += term;
        if (k <= lit.h) Vh += term;
    }
    for (u64 k1 : lo)
        for (u64 k2 : lo) {
            const u64 ell = std::lcm(k1, k2);
            const long double term = lit.lam[k1] * lit.lam[k2] * (ell <= lit.F ? lit.count(ell) : 0);
            W += term;
            if (ell <= lit.h) Wh += term;
        }
    r.V = V / lit.log_fz;
    r.W = W / lw;
    r.V_within_h = Vh / lit.log_fz;
    r.W_within_h = Wh / lw;
    r.lhs_empty = r.lhs == 0;

    if (lit.L > 0) {
        const long double L = lit.L;
        const u64 h = lit.h;
        long double v1p = 0, v2p = 0, v1m = 0, v2m = 0, w1p = 0, w2p = 0, w1m = 0, w2m = 0;
        for (u64 k1 : hi)
            if (k1 <= h) v1p += lit.lam[k1] * lit.count(k1);
        for (u64 k1 : all)
            if (k1 > h) v1m += lit.lam[k1] * lit.omega_scan(k1);
        for (u64 k1 : lo)
            for (u64 k2 : lo) {
                const u64 ell = std::lcm(k1, k2);
                if (ell <= h) w1p += lit.lam[k1] * lit.lam[k2] * lit.count(ell);
            }
        for (u64 k1 : all)
            for (u64 k2 : all) {
                const u64 ell = std::lcm(k1, k2);
                if (ell > h) w1m += lit.lam[k1] * lit.lam[k2] * lit.omega_lcm(k1, k2);
            }
        r.V_plus.push_back(v1p / lit.log_fz);
        r.W_plus.push_back(w1p / lw);
        r.V_minus.push_back(v1m / lit.log_fz);
        r.W_minus.push_back(w1m / lw);
        if (inst.depth == 2) {
            for (u64 k1 : hi)
                for (u64 k2 : all)
                    if (k1 * k2 <= h) v2p += lit.lam[k1] * lit.lam[k2] * lit.count(k1 * k2);
            for (u64 k1 : all)
                if (k1 <= h)
                    for (u64 k2 : all)
                        if (k1 * k2 > h) v2m += lit.lam[k1] * lit.lam[k2] * lit.omega_scan(k1 * k2);
            for (u64 k1 : lo)
                for (u64 k2 : lo)
                    for (u64 k3 : all) {
                        const u64 kappa = std::lcm(k1, k2) * k3;
                        if (kappa <= h) w2p += lit.lam[k1] * lit.lam[k2] * lit.lam[k3] * lit.count(kappa);
                    }
            for (u64 k1 : all)
                for (u64 k2 : all) {
                    const u64 ell = std::lcm(k1, k2);
                    if (ell > h) continue;
                    for (u64 k3 : all)
                        if (ell * k3 > h) w2m += lit.lam[k1] * lit.lam[k2] * lit.lam[k3] * lit.omega_scan(ell * k3);
                }
            r.V_plus.push_back(v2p / (lit.log_fz * L));
            r.W_plus.push_back(w2p / (lw * L));
            r.V_minus.push_back(v2m / (lit.log_fz * L));
            r.W_minus.push_back(w2m / (lw * L));
        }
    }
    r.verdict_2_1 = inequality_holds(r.lhs, r.V, r.W);
    r.verdict_2_2 = consequence_holds(r.lhs, r.V, r.W);
    return r;
}

Lemma31Report lemma31_literal(const VWInstance& inst, u64 kappa)
{
    Literal lit(inst);
    if (!(lit.L > 0)) throw DomainError("hypothesis f(z) > x violated");
    if (kappa < 1 || kappa > lit.h) throw DomainError("kappa must satisfy 1 <= kappa <= h");
    Lemma31Report r;
    r.kappa = kappa;
    r.lhs = lit.count(kappa);
    long double head = 0, tail = 0;
    for (u64 lambda = 1; lambda <= lit.F; ++lambda) {
        if (lit.lam[lambda] == 0 || !lit.le_y(lambda)) continue;
        if (lambda * kappa <= lit.h)
            head += lit.lam[lambda] * lit.count(kappa * lambda);
        else
            tail += lit.lam[lambda] * lit.omega_scan(kappa * lambda);
    }
    r.head = head / lit.L;
    r.tail = tail / lit.L;
    r.rhs = r.head + r.tail;
    r.lhs_empty = r.lhs == 0;
    r.verdict = r.lhs == 0 || r.lhs < r.rhs;
    return r;
}

Lemma41Report lemma41_literal(const FactoredPoly& f, u64 x, long double y)
{
    if (x > 100000) throw ScaleError("literal oracle: x > 1e5");
    Lemma41Report r = {};
    const long double ly = std::log(std::max(y, 1.0L));
    r.cmp_all = f.g() * ly;
    r.cmp_upper = f.g() * ly / 2;
    r.cmp_log = f.g() * ly * ly / 2;
    r.cmp_plain = ly > 0 ? y * std::log(static_cast<long double>(x)) / ly : 0;
    const auto c_of = [&](u64 q) {
        const auto c = f.product().reduce_mod(q);
        u64 roots = 0;
        for (u64 u = 0; u < q; ++u) {
            u128 acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * u + *it) % q;
            roots += acc == 0;
        }
        return roots;
    };
    for (u64 k = 2; k <= x; ++k) {
        const auto m = mangoldt(k);
        if (!m || m->p > prime_limit(y)) continue;
        const long double lam = std::log(static_cast<long double>(m->p));
        const auto w = static_cast<long double>(c_of(k));
        r.sum_all += lam * w / k;
        if (static_cast<long double>(m->p) * m->p > y) r.sum_upper += lam * w / k;
        r.sum_log += (2 * std::log(static_cast<long double>(k)) - lam) * lam * w / k;
        r.sum_plain += lam * w;
    }
    return r;
}

}  // namespace smoothpoly::oracle
