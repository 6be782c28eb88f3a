#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace swg {

/// Compressed sparse row matrix with sorted column indices per row.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
              std::vector<std::size_t> col_idx, std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Entry (i,j), zero if not stored.
    double coeff(std::size_t i, std::size_t j) const;

    /// y = A x, rows processed in order with sequential accumulation.
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;

    std::vector<double> diagonal() const;

    /// Exact (bitwise) symmetry check.
    bool is_symmetric() const;

    CsrMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

/// Coordinate-list builder. Duplicates are summed in a canonical order
/// (row, col, value), so the result does not depend on insertion order.
class TripletBuilder {
public:
    TripletBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    void add(std::size_t i, std::size_t j, double v);
    std::size_t size() const { return entries_.size(); }

    /// Entries that cancel to 0.0 stay in the pattern.
    CsrMatrix build() const;

private:
    struct Entry {
        std::size_t row;
        std::size_t col;
        double value;
    };
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Entry> entries_;
};

/// Largest |A_ij - B_ij| over the union of both patterns.
double max_abs_difference(const CsrMatrix& a, const CsrMatrix& b);

/// Matrix Market coordinate format, 1-based, entries sorted by (row, col).
void write_matrix_market(const CsrMatrix& a, const std::filesystem::path& path);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

} // namespace swg
