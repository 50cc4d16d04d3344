#include "smoothpoly/modroots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <atomic>
#include <random>

namespace smoothpoly {

namespace {

// Dense polynomials over F_p, lowest degree first, p < 2^32.
using ModPoly = std::vector<u64>;

void trim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, u64 p)
{
    trim(a);
    const u64 inv_lead = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 q = mulmod(a.back(), inv_lead, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
        trim(a);
    }
    return a;
}

ModPoly mod_div(ModPoly a, const ModPoly& b, u64 p)
{
    trim(a);
    if (a.size() < b.size()) return {};
    ModPoly quot(a.size() - b.size() + 1, 0);
    const u64 inv_lead = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 q = mulmod(a.back(), inv_lead, p);
        const std::size_t shift = a.size() - b.size();
        quot[shift] = q;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
        trim(a);
    }
    return quot;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, u64 p)
{
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

ModPoly make_monic(ModPoly a, u64 p)
{
    trim(a);
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : make_monic(a, p);
}

// base^e mod (modulus, p).
ModPoly mod_powmod(ModPoly base, u64 e, const ModPoly& modulus, u64 p)
{
    ModPoly result{1};
    base = mod_rem(base, modulus, p);
    while (e) {
        if (e & 1) result = mod_rem(mod_mul(result, base, p), modulus, p);
        base = mod_rem(mod_mul(base, base, p), modulus, p);
        e >>= 1;
    }
    return result;
}

// Splits a monic product of distinct linear factors into its roots.
void split_linear(const ModPoly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out)
{
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back((p - g[0]) % p);
        return;
    }
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        const u64 a = dist(rng);
        ModPoly h = mod_powmod(ModPoly{a, 1}, (p - 1) / 2, g, p);
        if (h.empty()) h = {0};
        h[0] = (h[0] + p - 1) % p;
        trim(h);
        ModPoly d = mod_gcd(g, h, p);
        if (d.size() > 1 && d.size() < g.size()) {
            split_linear(d, p, rng, out);
            split_linear(mod_div(g, d, p), p, rng, out);
            return;
        }
    }
}

std::atomic<u64> base_seed{0};

u64 seed_for(const IntPoly& f, u64 p)
{
    std::size_t h = std::hash<u64>{}(p ^ base_seed.load(std::memory_order_relaxed));
    for (const auto& c : f.coeffs()) h = h * 1000003u ^ std::hash<std::string>{}(c.get_str());
    return static_cast<u64>(h);
}

std::vector<u64> scan_roots(const IntPoly& f, u64 m)
{
    const auto c = f.reduce_mod(m);
    std::vector<u64> out;
    for (u64 u = 0; u < m; ++u) {
        u128 acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * u + *it) % m;
        if (acc == 0) out.push_back(u);
    }
    return out;
}

// f(u) mod m for m < 2^64 with precomputed reduced coefficients.
u64 eval_reduced(const std::vector<u64>& c, u64 u, u64 m)
{
    u128 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * u + *it) % m;
    return static_cast<u64>(acc);
}

}  // namespace

void set_splitting_seed(u64 seed) { base_seed.store(seed, std::memory_order_relaxed); }

u64 RootSet::modulus() const
{
    auto m = checked_pow(p, v);
    return m.value_or(0);
}

RootSet roots_mod_p(const IntPoly& f, u64 p)
{
    if (p > kMaxRootPrime || !is_prime(p)) throw DomainError("roots_mod_p: " + std::to_string(p) + " is not a prime below 2^32");
    RootSet rs{p, 1, {}};
    ModPoly fp = f.reduce_mod(p);
    trim(fp);
    const bool lead_vanishes = fp.size() != f.coeffs().size();
    if (p <= 64 || lead_vanishes) {
        if (lead_vanishes && p >= kMaxScanPrime)
            throw DomainError("roots_mod_p: prime " + std::to_string(p) + " divides the leading coefficient");
        rs.residues = scan_roots(f, p);
        return rs;
    }
    fp = make_monic(fp, p);
    // Strip the root 0 so the remaining roots are units.
    bool zero_root = fp[0] == 0;
    if (zero_root) {
        while (!fp.empty() && fp[0] == 0) fp.erase(fp.begin());
    }
    ModPoly xp = mod_powmod(ModPoly{0, 1}, p, fp, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    ModPoly g = mod_gcd(fp, xp, p);
    if (g.empty()) g = fp;  // fp divides X^p - X
    std::mt19937_64 rng(seed_for(f, p));
    split_linear(g, p, rng, rs.residues);
    if (zero_root) rs.residues.push_back(0);
    std::sort(rs.residues.begin(), rs.residues.end());
    rs.residues.erase(std::unique(rs.residues.begin(), rs.residues.end()), rs.residues.end());
    return rs;
}

RootSet roots_mod_p(const FactoredPoly& f, u64 p) { return roots_mod_p(f.product(), p); }

RootSet lift_roots(const IntPoly& f, u64 p, unsigned v)
{
    if (v == 0) throw DomainError("lift_roots: exponent must be >= 1");
    if (!checked_pow(p, v)) throw ScaleError("lift_roots: p^v exceeds 64 bits");
    RootSet current = roots_mod_p(f, p);
    if (v == 1) return current;
    const IntPoly df = f.degree() > 0 ? f.derivative() : f;
    u64 pk = p;
    for (unsigned k = 1; k < v; ++k) {
        const u64 next = pk * p;
        const auto c = f.reduce_mod(next);
        const auto dc = df.reduce_mod(p);
        std::vector<u64> lifted;
        for (u64 u : current.residues) {
            const u64 deriv = f.degree() > 0 ? eval_reduced(dc, u % p, p) : 0;
            if (deriv != 0) {
                // Simple root: unique lift u - f(u)/f'(u).
                const u64 fu = eval_reduced(c, u, next);
                // f(u) ≡ 0 mod p^k, so f(u)/p^k is an integer mod p.
                const u64 q = (fu / pk) % p;
                const u64 t = mulmod((p - q) % p, invmod(deriv, p), p);
                lifted.push_back(u + t * pk);
            } else {
                for (u64 t = 0; t < p; ++t) {
                    const u64 cand = u + t * pk;
                    if (eval_reduced(c, cand, next) == 0) lifted.push_back(cand);
                }
            }
        }
        std::sort(lifted.begin(), lifted.end());
        current.residues = std::move(lifted);
        current.v = k + 1;
        pk = next;
    }
    return current;
}

RootSet lift_roots(const FactoredPoly& f, u64 p, unsigned v) { return lift_roots(f.product(), p, v); }

u64 omega_of_factors(const FactoredPoly& f, std::span<const PrimePower> parts)
{
    std::map<u64, unsigned> merged;
    for (const auto& pp : parts) merged[pp.p] += pp.v;
    u64 result = 1;
    for (auto [p, v] : merged) {
        result *= lift_roots(f, p, v).size();
        if (result == 0) break;
    }
    return result;
}

u64 omega(const FactoredPoly& f, u64 k)
{
    if (k == 0) throw DomainError("omega: modulus must be >= 1");
    if (k > kMaxOmegaModulus) throw ScaleError("omega: modulus exceeds the 2^48 factoring budget");
    const auto fac = factorize(k);
    return omega_of_factors(f, fac);
}

long double huxley_bound(const FactoredPoly& f, u64 p)
{
    const unsigned theta = valuation(f.discriminant_abs(), p);
    return f.d() * std::pow(static_cast<long double>(p), theta / 2.0L);
}

long double global_root_bound(const FactoredPoly& f)
{
    return f.d() * std::sqrt(static_cast<long double>(f.discriminant_abs().get_d()));
}

std::vector<u64> RootCache::roots(u64 p)
{
    {
        std::shared_lock lock(mutex_);
        auto it = roots_.find(p);
        if (it != roots_.end()) return it->second;
    }
    auto rs = roots_mod_p(*f_, p).residues;
    std::unique_lock lock(mutex_);
    return roots_.emplace(p, std::move(rs)).first->second;
}

u64 RootCache::omega_prime_power(u64 p, unsigned v)
{
    {
        std::shared_lock lock(mutex_);
        auto it = counts_.find({p, v});
        if (it != counts_.end()) return it->second;
    }
    const u64 count = v == 1 ? roots(p).size() : lift_roots(*f_, p, v).size();
    std::unique_lock lock(mutex_);
    counts_.emplace(std::make_pair(p, v), count);
    return count;
}

u64 RootCache::omega_of_factors(std::span<const PrimePower> parts)
{
    std::map<u64, unsigned> merged;
    for (const auto& pp : parts) merged[pp.p] += pp.v;
    u64 result = 1;
    for (auto [p, v] : merged) {
        result *= omega_prime_power(p, v);
        if (result == 0) break;
    }
    return result;
}

}  // namespace smoothpoly
