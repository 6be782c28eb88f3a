#include "swg/sparse.hpp"

#include "swg/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <tuple>

namespace swg {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values))
{
    if (row_ptr_.size() != rows_ + 1 || col_idx_.size() != values_.size() ||
        row_ptr_.back() != values_.size()) {
        throw SolverError("csr matrix: inconsistent storage");
    }
}

double CsrMatrix::coeff(std::size_t i, std::size_t j) const
{
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            s += values_[k] * x[col_idx_[k]];
        }
        y[i] = s;
    }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const
{
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

std::vector<double> CsrMatrix::diagonal() const
{
    std::vector<double> d(std::min(rows_, cols_), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = coeff(i, i);
    }
    return d;
}

CsrMatrix CsrMatrix::transpose() const
{
    std::vector<std::size_t> ptr(cols_ + 1, 0);
    for (std::size_t c : col_idx_) {
        ++ptr[c + 1];
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        ptr[j + 1] += ptr[j];
    }
    std::vector<std::size_t> idx(values_.size());
    std::vector<double> val(values_.size());
    std::vector<std::size_t> next(ptr.begin(), ptr.end() - 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const std::size_t dst = next[col_idx_[k]]++;
            idx[dst] = i;
            val[dst] = values_[k];
        }
    }
    return {cols_, rows_, std::move(ptr), std::move(idx), std::move(val)};
}

bool CsrMatrix::is_symmetric() const
{
    if (rows_ != cols_) {
        return false;
    }
    const CsrMatrix t = transpose();
    return t.row_ptr_ == row_ptr_ && t.col_idx_ == col_idx_ && t.values_ == values_;
}

void TripletBuilder::add(std::size_t i, std::size_t j, double v)
{
    if (i >= rows_ || j >= cols_) {
        throw SolverError("triplet builder: index out of range");
    }
    entries_.push_back({i, j, v});
}

CsrMatrix TripletBuilder::build() const
{
    std::vector<Entry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.row, a.col, a.value) < std::tie(b.row, b.col, b.value);
    });
    std::vector<std::size_t> ptr(rows_ + 1, 0);
    std::vector<std::size_t> idx;
    std::vector<double> val;
    idx.reserve(sorted.size());
    val.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size();) {
        const std::size_t r = sorted[k].row;
        const std::size_t c = sorted[k].col;
        double s = 0.0;
        for (; k < sorted.size() && sorted[k].row == r && sorted[k].col == c; ++k) {
            s += sorted[k].value;
        }
        idx.push_back(c);
        val.push_back(s);
        ++ptr[r + 1];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        ptr[i + 1] += ptr[i];
    }
    return {rows_, cols_, std::move(ptr), std::move(idx), std::move(val)};
}

double max_abs_difference(const CsrMatrix& a, const CsrMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw SolverError("matrix comparison: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::size_t ka = a.row_ptr()[i];
        std::size_t kb = b.row_ptr()[i];
        const std::size_t ea = a.row_ptr()[i + 1];
        const std::size_t eb = b.row_ptr()[i + 1];
        while (ka < ea || kb < eb) {
            const std::size_t ca = ka < ea ? a.col_idx()[ka] : a.cols();
            const std::size_t cb = kb < eb ? b.col_idx()[kb] : b.cols();
            double d = 0.0;
            if (ca == cb) {
                d = a.values()[ka++] - b.values()[kb++];
            } else if (ca < cb) {
                d = a.values()[ka++];
            } else {
                d = b.values()[kb++];
            }
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

void write_matrix_market(const CsrMatrix& a, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write matrix file '" + path.string() + "'");
    }
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", a.values()[k]);
            out << i + 1 << ' ' << a.col_idx()[k] + 1 << ' ' << buf << '\n';
        }
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace swg
