#include "smoothpoly/poly.hpp"

#include <algorithm>
#include <cctype>
#include "json.hpp"
#include <set>

namespace smoothpoly {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a by b over Q; b nonzero.
QPoly qrem(QPoly a, const QPoly& b)
{
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

QPoly qdiv(QPoly a, const QPoly& b)
{
    trim(a);
    if (a.size() < b.size()) return {};
    QPoly quot(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        quot[shift] = q;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        trim(a);
    }
    return quot;
}

QPoly qderiv(const QPoly& p)
{
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

QPoly qgcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int sign_at(const QPoly& p, const mpq_class& x)
{
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return sgn(acc);
}

int sign_at_infinity(const QPoly& p) { return p.empty() ? 0 : sgn(p.back()); }

unsigned sign_changes(const std::vector<int>& signs)
{
    unsigned changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Fraction-free Gaussian elimination; the matrix is consumed.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<u64> divisors_of(u64 n)
{
    std::vector<u64> divs{1};
    for (auto [p, v] : factorize(n)) {
        const std::size_t base = divs.size();
        u64 pk = 1;
        for (unsigned e = 1; e <= v; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

u64 to_u64_checked(const mpz_class& v, const char* what)
{
    mpz_class a = abs(v);
    if (!a.fits_ulong_p()) throw ScaleError(std::string(what) + " exceeds 64 bits");
    return a.get_ui();
}

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    IntPoly parse()
    {
        std::vector<mpz_class> coeffs;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            mpz_class coeff = 1;
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff = read_integer();
                have_coeff = true;
                skip_ws();
                if (peek() == '*') {
                    get();
                    skip_ws();
                    if (peek() != 't') fail("expected 't' after '*'");
                }
            }
            unsigned exponent = 0;
            if (peek() == 't') {
                get();
                exponent = 1;
                skip_ws();
                if (peek() == '^') {
                    get();
                    skip_ws();
                    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
                    mpz_class e = read_integer();
                    if (!e.fits_uint_p() || e > 4096) fail("exponent too large");
                    exponent = static_cast<unsigned>(e.get_ui());
                }
            } else if (!have_coeff) {
                fail("expected a term");
            }
            if (coeffs.size() <= exponent) coeffs.resize(exponent + 1, 0);
            coeffs[exponent] += sign * coeff;
            skip_ws();
        }
        return IntPoly(std::move(coeffs));
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() { return s_[pos_++]; }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    mpz_class read_integer()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw DomainError("polynomial syntax error at position " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

mpz_class json_integer(const nlohmann::json& v)
{
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<unsigned long long>()));
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        mpz_class out;
        if (s.empty() || out.set_str(s, 10) != 0) throw DomainError("polynomial syntax error: bad integer \"" + s + "\"");
        return out;
    }
    throw DomainError("polynomial syntax error: coefficients must be integers");
}

IntPoly poly_from_json(const nlohmann::json& v)
{
    if (v.is_string()) return parse_poly(v.get<std::string>());
    if (!v.is_array() || v.empty()) throw DomainError("polynomial syntax error: expected a nonempty coefficient list");
    std::vector<mpz_class> coeffs;
    for (const auto& c : v) coeffs.push_back(json_integer(c));
    return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs))
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) throw DomainError("zero polynomial");
}

IntPoly IntPoly::monomial(long coeff, unsigned degree)
{
    std::vector<mpz_class> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPoly(std::move(c));
}

mpz_class IntPoly::eval(const mpz_class& n) const
{
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
    return acc;
}

std::vector<u64> IntPoly::reduce_mod(u64 m) const
{
    std::vector<u64> out;
    out.reserve(coeffs_.size());
    mpz_class mm(std::to_string(m)), r;
    for (const auto& c : coeffs_) {
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mm.get_mpz_t());
        out.push_back(std::stoull(r.get_str()));
    }
    return out;
}

u64 IntPoly::eval_mod(u64 n, u64 m) const
{
    auto c = reduce_mod(m);
    u64 acc = 0;
    n %= m;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = static_cast<u64>((static_cast<u128>(acc) * n + *it) % m);
    return acc;
}

IntPoly IntPoly::derivative() const
{
    if (coeffs_.size() == 1) throw DomainError("derivative of a constant is zero");
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const
{
    mpz_class g = 0;
    for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly IntPoly::operator-() const
{
    auto c = coeffs_;
    for (auto& v : c) v = -v;
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const
{
    std::string out;
    for (int i = static_cast<int>(degree()); i >= 0; --i) {
        const mpz_class& c = coeffs_[i];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (!out.empty()) out += c < 0 ? "-" : "+";
        else if (c < 0) out += "-";
        if (i == 0 || a != 1) out += a.get_str();
        if (i >= 1) {
            if (a != 1) out += "*";
            out += "t";
            if (i >= 2) out += "^" + std::to_string(i);
        }
    }
    return out;
}

mpz_class IntPoly::height_bound(const mpz_class& x) const
{
    mpz_class acc = 0, ax = abs(x);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + abs(*it);
    return acc;
}

IntPoly parse_poly(std::string_view text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw DomainError("polynomial syntax error: empty input");
    if (text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw DomainError(std::string("polynomial syntax error: ") + e.what());
        }
        return poly_from_json(j);
    }
    return PolyParser(text).parse();
}

std::vector<IntPoly> parse_factor_list(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("factor list syntax error: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw DomainError("factor list must be a nonempty JSON array");
    std::vector<IntPoly> out;
    for (const auto& f : j) out.push_back(poly_from_json(f));
    return out;
}

mpz_class resultant(const IntPoly& f, const IntPoly& g)
{
    const std::size_t m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return 1;
    const std::size_t size = m + n;
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t i = 0; i <= m; ++i) s[row][row + i] = f[static_cast<unsigned>(m - i)];
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t i = 0; i <= n; ++i) s[n + row][row + i] = g[static_cast<unsigned>(n - i)];
    return bareiss_determinant(std::move(s));
}

mpz_class discriminant(const IntPoly& f)
{
    const unsigned n = f.degree();
    if (n == 0) throw DomainError("discriminant of a constant");
    if (n == 1) return 1;
    mpz_class r = resultant(f, f.derivative());
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
    if ((static_cast<unsigned long>(n) * (n - 1) / 2) % 2 == 1) out = -out;
    return out;
}

std::vector<std::pair<mpz_class, mpz_class>> rational_roots(const IntPoly& f)
{
    std::vector<std::pair<mpz_class, mpz_class>> roots;
    unsigned low = 0;
    while (f[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0, 1);
    if (low == f.degree()) return roots;

    const u64 a0 = to_u64_checked(f[low], "constant coefficient");
    const u64 lead = to_u64_checked(f.leading(), "leading coefficient");
    const auto num_divs = divisors_of(a0);
    const auto den_divs = divisors_of(lead);
    std::set<std::pair<mpz_class, mpz_class>> seen;
    for (u64 q : den_divs) {
        for (u64 p : num_divs) {
            if (gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                mpz_class num = sign * mpz_class(std::to_string(p));
                mpz_class den(std::to_string(q));
                // q^deg * f(p/q) by homogeneous Horner.
                mpz_class acc = 0, qpow = 1;
                for (int i = static_cast<int>(f.degree()); i >= 0; --i) {
                    acc = acc * num + f[static_cast<unsigned>(i)] * qpow;
                    qpow *= den;
                }
                if (acc == 0 && seen.emplace(num, den).second) roots.emplace_back(num, den);
            }
        }
    }
    return roots;
}

unsigned count_real_roots_above(const IntPoly& f, const mpz_class& a)
{
    QPoly p;
    for (const auto& c : f.coeffs()) p.emplace_back(c);
    if (p.size() == 1) return 0;
    // Square-free part keeps the chain valid when f has repeated roots.
    QPoly g = qgcd(p, qderiv(p));
    if (g.size() > 1) p = qdiv(p, g);
    std::vector<QPoly> chain{p, qderiv(p)};
    while (chain.back().size() > 1) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    std::vector<int> at_a, at_inf;
    const mpq_class x(a);
    for (const auto& q : chain) {
        at_a.push_back(sign_at(q, x));
        at_inf.push_back(sign_at_infinity(q));
    }
    return sign_changes(at_a) - sign_changes(at_inf);
}

long t0(const IntPoly& f, int sign)
{
    if (f.degree() == 0) throw DomainError("T_0 undefined for a constant polynomial");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    const IntPoly g = sign == 1 ? f : -f;
    if (g.leading() < 0) throw DomainError("sign*f does not tend to +infinity");

    // Cauchy bound covering the real roots of g' and of g - 1.
    mpz_class max_ratio = 0;
    for (unsigned i = 0; i < g.degree(); ++i) {
        mpz_class c = abs(g[i]) + (i == 0 ? 1 : 0);
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), c.get_mpz_t(), g.leading().get_mpz_t());
        max_ratio = std::max(max_ratio, q);
    }
    mpz_class hi = max_ratio + 2;
    if (!hi.fits_slong_p()) throw ScaleError("T_0 search range exceeds machine integers");

    const bool linear = g.degree() == 1;
    const IntPoly dg = linear ? g : g.derivative();
    auto works = [&](long t) {
        if (g.eval(t) < 1) return false;
        return linear || count_real_roots_above(dg, mpz_class(t)) == 0;
    };
    long lo = 2, top = std::max(2L, hi.get_si());
    if (works(lo)) return lo;
    while (top - lo > 1) {
        long mid = lo + (top - lo) / 2;
        if (works(mid)) top = mid;
        else lo = mid;
    }
    return top;
}

unsigned valuation(const mpz_class& n, u64 p)
{
    if (n == 0) throw DomainError("valuation of zero");
    mpz_class v = abs(n);
    mpz_class pp(std::to_string(p));
    unsigned e = 0;
    while (mpz_divisible_p(v.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t());
        ++e;
    }
    return e;
}

FactoredPoly::FactoredPoly(std::vector<IntPoly> factors, std::vector<Irreducibility> status, bool flipped)
    : factors_(std::move(factors)), status_(std::move(status)), product_(factors_.front()), sign_flipped_(flipped)
{
    for (std::size_t i = 1; i < factors_.size(); ++i) product_ = product_ * factors_[i];
    mpz_class disc = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        degrees_.push_back(factors_[i].degree());
        d_ += factors_[i].degree();
        disc *= discriminant(factors_[i]);
        for (std::size_t j = i + 1; j < factors_.size(); ++j) {
            mpz_class r = resultant(factors_[i], factors_[j]);
            disc *= r * r;
        }
    }
    disc_ = abs(disc);
}

bool FactoredPoly::has_asserted_factor() const
{
    return std::any_of(status_.begin(), status_.end(), [](auto s) { return s == Irreducibility::asserted; });
}

std::string FactoredPoly::to_string() const
{
    if (factors_.size() == 1) return factors_.front().to_string();
    std::string out;
    for (const auto& f : factors_) out += "(" + f.to_string() + ")";
    return out;
}

FactoredPoly build_factored(std::vector<IntPoly> factors)
{
    if (factors.empty()) throw DomainError("empty factor list");
    bool flipped = false;
    std::vector<Irreducibility> status;
    for (auto& f : factors) {
        if (f.degree() == 0) throw DomainError("constant factor " + f.to_string() + " is not allowed");
        if (f.leading() < 0) {
            f = -f;
            flipped = !flipped;
        }
        if (f.content() != 1) throw DomainError("factor " + f.to_string() + " is not primitive");
        if (f.degree() >= 2) {
            auto roots = rational_roots(f);
            if (!roots.empty()) {
                const auto& [p, q] = roots.front();
                std::string r = q == 1 ? p.get_str() : p.get_str() + "/" + q.get_str();
                throw DomainError("factor " + f.to_string() + " is reducible: rational root " + r);
            }
            if (discriminant(f) == 0) throw DomainError("factor " + f.to_string() + " has a repeated root");
        }
        status.push_back(f.degree() <= 3 ? Irreducibility::proven : Irreducibility::asserted);
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (factors[i] == factors[j]) throw DomainError("duplicate factor " + factors[i].to_string());
    FactoredPoly out(std::move(factors), std::move(status), flipped);
    if (out.discriminant_abs() == 0) throw DomainError("factors share a common root");
    return out;
}

}  // namespace smoothpoly
