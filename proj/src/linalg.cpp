#include "polymin/linalg.hpp"

#include <stdexcept>

namespace polymin {

Int bareiss_det(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Bareiss
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

Rat rat_det(RatMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rat_det: not square");
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m.at(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            det = -det;
        }
        det *= m.at(k, k);
        Rat inv = Rat(1) / m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m.at(i, k) == 0) continue;
            Rat f = m.at(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

std::size_t rat_rank(RatMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(p, j));
        Rat inv = Rat(1) / m.at(rank, c);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) * inv;
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rat>> solve_linear(RatMatrix a, std::vector<Rat> b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            std::swap(b[k], b[p]);
        }
        Rat inv = Rat(1) / a.at(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            Rat f = a.at(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a.at(i, i);
    return x;
}

std::optional<RatMatrix> rat_inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("rat_inverse: not square");
    const std::size_t n = a.rows();
    RatMatrix m = a, inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m.at(p, k) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(k, j), m.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        Rat piv = m.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            Rat f = m.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

} // namespace polymin
