#include "keller/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace keller {

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (unsigned e : m.exps) h = (h ^ e) * 0x100000001b3ULL;
        return h;
    }
};

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

Polynomial from_accumulator(int nvars, Accumulator&& acc) {
    Polynomial r(nvars);
    for (auto& [m, c] : acc)
        if (c != 0) r.add_term(m, c);
    return r;
}

void check_same_nvars(const Polynomial& p, const Polynomial& q) {
    if (p.nvars() != q.nvars())
        throw std::invalid_argument("polynomial nvars mismatch");
}

}  // namespace

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int j) {
    if (j < 1 || j > nvars) throw std::invalid_argument("variable index out of range");
    Monomial m(nvars);
    m.exps[j - 1] = 1;
    Polynomial p(nvars);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::term(int nvars, const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.exps.size()) != nvars)
        throw std::invalid_argument("monomial length does not match nvars");
    Polynomial p(nvars);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

unsigned Polynomial::degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned Polynomial::order() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(-c));
    return r;
}

Polynomial& Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    check_same_nvars(p, q);
    Polynomial r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, c);
    return r;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    check_same_nvars(p, q);
    Polynomial r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, Rational(-c));
    return r;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    check_same_nvars(p, q);
    Accumulator acc;
    acc.reserve(p.terms_.size() * 2);
    Monomial prod(p.nvars());
    for (const auto& [mp, cp] : p.terms_)
        for (const auto& [mq, cq] : q.terms_) {
            for (std::size_t i = 0; i < prod.exps.size(); ++i)
                prod.exps[i] = mp.exps[i] + mq.exps[i];
            acc[prod] += cp * cq;
        }
    return from_accumulator(p.nvars(), std::move(acc));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial r(p.nvars());
    if (c == 0) return r;
    for (const auto& [m, k] : p.terms()) r.add_term(m, Rational(c * k));
    return r;
}

Polynomial Polynomial::mul_truncated(const Polynomial& q, unsigned max_degree) const {
    check_same_nvars(*this, q);
    Accumulator acc;
    Monomial prod(nvars_);
    for (const auto& [mp, cp] : terms_) {
        unsigned dp = mp.degree();
        if (dp > max_degree) continue;
        for (const auto& [mq, cq] : q.terms_) {
            if (dp + mq.degree() > max_degree) continue;
            for (std::size_t i = 0; i < prod.exps.size(); ++i)
                prod.exps[i] = mp.exps[i] + mq.exps[i];
            acc[prod] += cp * cq;
        }
    }
    return from_accumulator(nvars_, std::move(acc));
}

Polynomial Polynomial::truncate(unsigned max_degree) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_)
        if (m.degree() <= max_degree) r.terms_.emplace(m, c);
    return r;
}

Polynomial Polynomial::pow(unsigned e, std::optional<unsigned> max_degree) const {
    Polynomial r = Polynomial::constant(nvars_, Rational(1));
    for (unsigned i = 0; i < e; ++i)
        r = max_degree ? r.mul_truncated(*this, *max_degree) : r * *this;
    return r;
}

Polynomial Polynomial::partial_derivative(int j) const {
    if (j < 1 || j > nvars_) throw std::invalid_argument("derivative index out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exps[j - 1];
        if (e == 0) continue;
        Monomial dm = m;
        dm.exps[j - 1] = e - 1;
        r.add_term(dm, Rational(c * e));
    }
    return r;
}

namespace {

// Multi-variable Horner evaluation: bucket the terms by the exponent of the
// current variable, recurse on the rest, then fold the buckets in descending
// exponent order multiplying by (cached) gap powers of the argument. Far
// cheaper than per-term power products when results grow large.
struct Substituter {
    const std::vector<Polynomial>& args;
    std::optional<unsigned> max_degree;
    int nvars;
    int out_nvars;
    std::vector<std::vector<Polynomial>> powers;

    Substituter(const std::vector<Polynomial>& a, std::optional<unsigned> cap, int nv,
                int onv)
        : args(a), max_degree(cap), nvars(nv), out_nvars(onv), powers(nv) {
        for (int j = 0; j < nv; ++j)
            powers[j].push_back(Polynomial::constant(onv, Rational(1)));
    }

    Polynomial mul(const Polynomial& a, const Polynomial& b) const {
        return max_degree ? a.mul_truncated(b, *max_degree) : a * b;
    }

    const Polynomial& power_of(int j, unsigned e) {
        auto& cache = powers[j];
        while (cache.size() <= e) cache.push_back(mul(cache.back(), args[j]));
        return cache[e];
    }

    using Term = std::pair<const Monomial*, const Rational*>;

    Polynomial run(const std::vector<Term>& terms, int j) {
        if (terms.empty()) return Polynomial::zero(out_nvars);
        if (j == nvars) {
            Rational c(0);
            for (const auto& [m, coef] : terms) c += *coef;
            return Polynomial::constant(out_nvars, c);
        }
        std::map<unsigned, std::vector<Term>, std::greater<>> buckets;
        for (const auto& t : terms) buckets[t.first->exps[j]].push_back(t);
        Polynomial result(out_nvars);
        bool started = false;
        unsigned prev = 0;
        for (auto& [e, bucket] : buckets) {
            Polynomial re = run(bucket, j + 1);
            if (!started) {
                result = std::move(re);
                started = true;
            } else {
                result = mul(result, power_of(j, prev - e)) + re;
            }
            prev = e;
        }
        if (prev > 0) result = mul(result, power_of(j, prev));
        return result;
    }
};

}  // namespace

Polynomial Polynomial::substitute(const std::vector<Polynomial>& args,
                                  std::optional<unsigned> max_degree) const {
    if (static_cast<int>(args.size()) != nvars_)
        throw std::invalid_argument("substitute arity mismatch");
    int out_nvars = args.empty() ? nvars_ : args[0].nvars();
    for (const auto& a : args)
        if (a.nvars() != out_nvars)
            throw std::invalid_argument("substitute arguments disagree on nvars");

    Substituter sub(args, max_degree, nvars_, out_nvars);
    std::vector<Substituter::Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) terms.emplace_back(&m, &c);
    return sub.run(terms, 0);
}

Polynomial Polynomial::homogeneous_component(unsigned k) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == k) r.terms_.emplace(m, c);
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("evaluate arity mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (int j = 0; j < nvars_; ++j)
            if (m.exps[j] > 0) v *= rational_pow(point[j], m.exps[j]);
        total += v;
    }
    return total;
}

bool Polynomial::is_homogeneous(unsigned* d) const {
    if (terms_.empty()) return false;
    unsigned deg = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != deg) return false;
    if (d) *d = deg;
    return true;
}

// ---- text form -------------------------------------------------------------

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Printed in descending lexicographic order (x1 highest), the order the
    // map file format uses; the stored grlex order stays the canonical one.
    std::vector<const TermMap::value_type*> ordered;
    ordered.reserve(terms_.size());
    for (const auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return a->first.exps > b->first.exps;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto* t : ordered) {
        const auto& [m, c] = *t;
        Rational a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_vars = m.degree() > 0;
        if (!has_vars) {
            out << a.get_str();
        } else {
            bool printed = false;
            if (a != 1) {
                out << a.get_str();
                printed = true;
            }
            for (int j = 0; j < nvars_; ++j) {
                if (m.exps[j] == 0) continue;
                if (printed) out << "*";
                out << "x" << (j + 1);
                if (m.exps[j] > 1) out << "^" << m.exps[j];
                printed = true;
            }
        }
    }
    return out.str();
}

namespace {

// Expanded sum-of-terms grammar only: no parentheses, terms are
// [coef][*]x<i>[^<e>][*x<j>[^<e>]...] joined by + / -.
struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    int nvars;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + what);
    }

    unsigned long parse_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return std::stoul(s.substr(start, pos - start));
    }

    Rational parse_coefficient() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string num = s.substr(start, pos - start);
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            skip_ws();
            std::size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) fail("expected denominator digits");
            num += "/" + s.substr(dstart, pos - dstart);
        }
        return parse_rational(num);
    }

    // one monomial factor "x<i>[^<e>]"
    void parse_factor(Monomial& m) {
        skip_ws();
        if (pos >= s.size() || s[pos] != 'x') fail("expected variable factor");
        ++pos;
        unsigned long idx = parse_uint();
        if (idx < 1 || static_cast<int>(idx) > nvars) fail("variable index out of range");
        unsigned long e = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            e = parse_uint();
        }
        m.exps[idx - 1] += static_cast<unsigned>(e);
    }

    // term = coefficient | coefficient '*' factors | factors
    void parse_term(Polynomial& acc, bool negative) {
        skip_ws();
        Rational coef(1);
        bool have_coef = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coef = parse_coefficient();
            have_coef = true;
        }
        Monomial m(nvars);
        skip_ws();
        if (have_coef && pos < s.size() && s[pos] == '*') {
            ++pos;
            parse_factor(m);
        } else if (!have_coef) {
            parse_factor(m);
        }
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                parse_factor(m);
            } else {
                break;
            }
        }
        if (negative) coef = -coef;
        acc.add_term(m, coef);
    }

    Polynomial parse() {
        Polynomial acc(nvars);
        skip_ws();
        if (pos >= s.size()) fail("empty polynomial");
        if (s.compare(pos, 1, "0") == 0 && pos + 1 >= s.size()) return acc;
        bool negative = false;
        if (s[pos] == '-') {
            negative = true;
            ++pos;
        } else if (s[pos] == '+') {
            ++pos;
        }
        parse_term(acc, negative);
        while (!eof()) {
            char op = s[pos];
            if (op != '+' && op != '-') fail("expected + or -");
            ++pos;
            parse_term(acc, op == '-');
        }
        return acc;
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int nvars) {
    PolyParser parser{text, 0, nvars};
    return parser.parse();
}

// ---- univariate gcd --------------------------------------------------------

namespace {

// dense coefficient form, index = power
std::vector<Rational> to_dense(const Polynomial& p) {
    std::vector<Rational> c(p.degree() + 1, Rational(0));
    for (const auto& [m, k] : p.terms()) c[m.degree()] = k;
    return c;
}

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// remainder of a by b, b nonzero
std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rational q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        trim(a);
    }
    return a;
}

}  // namespace

Polynomial univariate_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.nvars() != 1 || q.nvars() != 1)
        throw std::invalid_argument("univariate_gcd expects univariate inputs");
    std::vector<Rational> a = to_dense(p), b = to_dense(q);
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    Polynomial g(1);
    if (a.empty()) return g;
    Rational lead = a.back();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Monomial m(1);
        m.exps[0] = static_cast<unsigned>(i);
        g.add_term(m, Rational(a[i] / lead));
    }
    return g;
}

}  // namespace keller
