#include "polymin/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace polymin {

void IntPolynomial::check_same_vars(const IntPolynomial& o) const {
    if (num_vars_ != o.num_vars_)
        throw std::invalid_argument("polynomial variable counts differ: " +
                                    std::to_string(num_vars_) + " vs " +
                                    std::to_string(o.num_vars_));
}

IntPolynomial IntPolynomial::constant(std::size_t num_vars, const Int& c) {
    IntPolynomial p(num_vars);
    if (c != 0) p.terms_.emplace(Monomial(num_vars), c);
    return p;
}

IntPolynomial IntPolynomial::variable(std::size_t num_vars, std::size_t j, unsigned exp) {
    if (j >= num_vars) throw std::invalid_argument("variable index out of range");
    IntPolynomial p(num_vars);
    Monomial m(num_vars);
    m.exps[j] = exp;
    p.terms_.emplace(std::move(m), Int(1));
    return p;
}

IntPolynomial IntPolynomial::term(std::size_t num_vars, const Int& c, const Monomial& m) {
    if (m.exps.size() != num_vars) throw std::invalid_argument("monomial length mismatch");
    IntPolynomial p(num_vars);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

void IntPolynomial::add_term(const Monomial& m, const Int& c) {
    if (m.exps.size() != num_vars_) throw std::invalid_argument("monomial length mismatch");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    check_same_vars(o);
    IntPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    check_same_vars(o);
    IntPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r(num_vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    check_same_vars(o);
    IntPolynomial r(num_vars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(num_vars_);
            for (std::size_t i = 0; i < num_vars_; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

IntPolynomial IntPolynomial::operator*(const Int& c) const {
    IntPolynomial r(num_vars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial r = constant(num_vars_, 1);
    IntPolynomial b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

IntPolynomial IntPolynomial::homogenize(unsigned e) const {
    if (!is_zero() && total_degree() > e)
        throw std::invalid_argument("homogenize: target degree below polynomial degree");
    IntPolynomial r(num_vars_ + 1);
    for (const auto& [m, c] : terms_) {
        Monomial hm(num_vars_ + 1);
        unsigned d = m.total_degree();
        hm.exps[0] = e - d;
        for (std::size_t i = 0; i < num_vars_; ++i) hm.exps[i + 1] = m.exps[i];
        r.terms_.emplace(std::move(hm), c);
    }
    return r;
}

IntPolynomial IntPolynomial::partial_derivative(std::size_t j) const {
    if (j >= num_vars_) throw std::invalid_argument("partial_derivative: index out of range");
    IntPolynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[j] == 0) continue;
        Monomial dm = m;
        unsigned e = dm.exps[j]--;
        r.add_term(dm, c * e);
    }
    return r;
}

Rat IntPolynomial::evaluate(const RationalPoint& pt) const {
    if (pt.dim() != num_vars_)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (m.exps[i]) t *= rat_pow(pt.coords[i], m.exps[i]);
        acc += t;
    }
    return acc;
}

Int IntPolynomial::evaluate_int(const std::vector<Int>& pt) const {
    if (pt.size() != num_vars_)
        throw std::invalid_argument("evaluate_int: point dimension mismatch");
    Int acc = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (m.exps[i]) t *= int_pow(pt[i], m.exps[i]);
        acc += t;
    }
    return acc;
}

Int IntPolynomial::height() const {
    Int h = 0;
    for (const auto& [m, c] : terms_) {
        Int a = abs_int(c);
        if (a > h) h = a;
    }
    return h;
}

unsigned IntPolynomial::total_degree() const {
    if (is_zero()) throw zero_polynomial_error("total_degree of the zero polynomial");
    // graded order: the last term has maximal degree
    return terms_.rbegin()->first.total_degree();
}

unsigned IntPolynomial::degree_in(std::size_t j) const {
    if (j >= num_vars_) throw std::invalid_argument("degree_in: index out of range");
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exps[j]);
    return d;
}

bool IntPolynomial::is_homogeneous_of_degree(unsigned e) const {
    for (const auto& [m, c] : terms_)
        if (m.total_degree() != e) return false;
    return true;
}

unsigned IntPolynomial::degree_in_vars(const std::vector<std::size_t>& vars) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (std::size_t j : vars) s += m.exps[j];
        d = std::max(d, s);
    }
    return d;
}

bool IntPolynomial::is_homogeneous_in_vars(const std::vector<std::size_t>& vars, unsigned e) const {
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (std::size_t j : vars) s += m.exps[j];
        if (s != e) return false;
    }
    return true;
}

IntPolynomial IntPolynomial::specialize(std::size_t j, const Int& value) const {
    if (j >= num_vars_) throw std::invalid_argument("specialize: index out of range");
    IntPolynomial r(num_vars_ - 1);
    for (const auto& [m, c] : terms_) {
        Int coeff = c;
        if (m.exps[j]) coeff *= int_pow(value, m.exps[j]);
        Monomial sm(num_vars_ - 1);
        for (std::size_t i = 0, k = 0; i < num_vars_; ++i)
            if (i != j) sm.exps[k++] = m.exps[i];
        r.add_term(sm, coeff);
    }
    return r;
}

IntPolynomial IntPolynomial::substitute(std::size_t j, const Int& value) const {
    if (j >= num_vars_) throw std::invalid_argument("substitute: index out of range");
    IntPolynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
        Int coeff = c;
        Monomial sm = m;
        if (sm.exps[j]) {
            coeff *= int_pow(value, sm.exps[j]);
            sm.exps[j] = 0;
        }
        r.add_term(sm, coeff);
    }
    return r;
}

IntPolynomial IntPolynomial::insert_var(std::size_t j) const {
    if (j > num_vars_) throw std::invalid_argument("insert_var: position out of range");
    IntPolynomial r(num_vars_ + 1);
    for (const auto& [m, c] : terms_) {
        Monomial nm(num_vars_ + 1);
        for (std::size_t i = 0; i < j; ++i) nm.exps[i] = m.exps[i];
        for (std::size_t i = j; i < num_vars_; ++i) nm.exps[i + 1] = m.exps[i];
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

IntPolynomial IntPolynomial::drop_var(std::size_t j) const {
    if (degree_in(j) != 0) throw std::invalid_argument("drop_var: variable occurs");
    IntPolynomial r(num_vars_ - 1);
    for (const auto& [m, c] : terms_) {
        Monomial nm(num_vars_ - 1);
        for (std::size_t i = 0, k = 0; i < num_vars_; ++i)
            if (i != j) nm.exps[k++] = m.exps[i];
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

IntPolynomial IntPolynomial::divide_by_var_power(std::size_t j, unsigned e) const {
    if (e == 0) return *this;
    IntPolynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[j] < e)
            throw std::invalid_argument("divide_by_var_power: not divisible");
        Monomial nm = m;
        nm.exps[j] -= e;
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

unsigned IntPolynomial::min_degree_in(std::size_t j) const {
    if (is_zero()) return 0;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto& [m, c] : terms_) d = std::min(d, m.exps[j]);
    return d;
}

std::vector<std::pair<Monomial, IntPolynomial>>
IntPolynomial::collect(const std::vector<std::size_t>& vars) const {
    std::vector<bool> in_group(num_vars_, false);
    for (std::size_t j : vars) in_group.at(j) = true;
    std::size_t rest = num_vars_ - vars.size();

    std::map<Monomial, IntPolynomial, GradedLexLess> groups;
    for (const auto& [m, c] : terms_) {
        Monomial key(vars.size());
        Monomial rem(rest);
        for (std::size_t i = 0, b = 0; i < num_vars_; ++i)
            if (!in_group[i]) rem.exps[b++] = m.exps[i];
        for (std::size_t k = 0; k < vars.size(); ++k) key.exps[k] = m.exps[vars[k]];
        auto [it, inserted] = groups.try_emplace(key, IntPolynomial(rest));
        it->second.add_term(rem, c);
        (void)inserted;
    }
    return {groups.begin(), groups.end()};
}

std::string IntPolynomial::to_string(const std::vector<std::string>& var_names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << abs_int(c).str();
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (m.exps[i] == 0) continue;
            os << "*";
            if (i < var_names.size()) os << var_names[i];
            else os << "x" << (i + 1);
            if (m.exps[i] > 1) os << "^" << m.exps[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

std::size_t VarLayout::require(VarKind k, std::size_t index) const {
    auto s = find(k, index);
    if (!s) throw std::invalid_argument("layout: missing variable role");
    return *s;
}

std::vector<std::size_t> VarLayout::slots_of_kind(VarKind k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i)
        if (roles[i].kind == k) out.push_back(i);
    return out;
}

std::vector<std::string> VarLayout::names() const {
    std::vector<std::string> out;
    for (const auto& r : roles) {
        switch (r.kind) {
            case VarKind::T0: out.push_back("t0"); break;
            case VarKind::T: out.push_back("t"); break;
            case VarKind::U: out.push_back("U"); break;
            case VarKind::X: out.push_back("x" + std::to_string(r.index)); break;
            case VarKind::LAM: out.push_back("l" + std::to_string(r.index)); break;
        }
    }
    return out;
}

IntPolynomial poly_det(const std::vector<std::vector<IntPolynomial>>& m) {
    const std::size_t k = m.size();
    if (k == 0) throw std::invalid_argument("poly_det: empty matrix");
    for (const auto& row : m)
        if (row.size() != k) throw std::invalid_argument("poly_det: not square");
    if (k == 1) return m[0][0];
    std::size_t nv = m[0][0].num_vars();
    IntPolynomial acc(nv);
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<IntPolynomial>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<IntPolynomial> row;
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        IntPolynomial term = m[0][c] * poly_det(minor);
        acc = c % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

IntPolynomial embed(const IntPolynomial& p, const VarLayout& from, const VarLayout& to) {
    if (p.num_vars() != from.size())
        throw std::invalid_argument("embed: polynomial does not match source layout");
    std::vector<std::size_t> slot_map(from.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        slot_map[i] = to.require(from.roles[i].kind, from.roles[i].index);
    IntPolynomial r(to.size());
    for (const auto& [m, c] : p.terms()) {
        Monomial nm(to.size());
        for (std::size_t i = 0; i < from.size(); ++i) nm.exps[slot_map[i]] = m.exps[i];
        r.add_term(nm, c);
    }
    return r;
}

} // namespace polymin
