#ifndef POLYMIN_LINALG_HPP
#define POLYMIN_LINALG_HPP

#include <optional>
#include <vector>

#include "polymin/numeric.hpp"

namespace polymin {

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix submatrix(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const {
        Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                s.at(i, j) = at(row_idx[i], col_idx[j]);
        return s;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// Fraction-free Gaussian elimination (Bareiss); exact determinant of a
// square integer matrix.
Int bareiss_det(IntMatrix m);

Rat rat_det(RatMatrix m);

std::size_t rat_rank(RatMatrix m);

// Solve a square system A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_linear(RatMatrix a, std::vector<Rat> b);

std::optional<RatMatrix> rat_inverse(const RatMatrix& a);

} // namespace polymin

#endif
