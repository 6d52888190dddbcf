#include "evanescent/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace evanescent {

SelectionMatrix::SelectionMatrix(const SlopePair& slope, const LatticeRect& rect)
    : range_(modulating_indices(slope, rect)) {
  row_of_column_.resize(static_cast<std::size_t>(rect.size()));
  for (Index idx = 0; idx < rect.size(); ++idx) {
    row_of_column_[static_cast<std::size_t>(idx)] = slope.process_index(rect.point(idx)) - range_.k_min;
  }
}

Index SelectionMatrix::distinct_columns() const {
  std::unordered_set<Index> rows(row_of_column_.begin(), row_of_column_.end());
  return static_cast<Index>(rows.size());
}

Eigen::VectorXi SelectionMatrix::row_counts() const {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(rows());
  for (Index r : row_of_column_) ++counts[r];
  return counts;
}

Eigen::MatrixXd SelectionMatrix::dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows(), cols());
  for (Index col = 0; col < cols(); ++col) a(row_of(col), col) = 1.0;
  return a;
}

SelectionMatrix build_selection(const SlopePair& slope, const LatticeRect& rect) {
  return SelectionMatrix(slope, rect);
}

Eigen::VectorXcd build_modulation(const EvanescentComponent& comp, const LatticeRect& rect) {
  Eigen::VectorXcd diag(rect.size());
  for (Index idx = 0; idx < rect.size(); ++idx) {
    const double v = static_cast<double>(comp.slope.phase_index(rect.point(idx)));
    diag[idx] = std::polar(1.0, -comp.omega * v);
  }
  return diag;
}

Eigen::MatrixXd process_covariance(const ProcessSpec& spec, Index size) {
  if (size < 1) throw std::invalid_argument("process covariance size must be positive");
  spec.validate();
  Eigen::VectorXd lags(size);
  for (Index l = 0; l < size; ++l) lags[l] = spec.autocovariance(l);
  Eigen::MatrixXd r(size, size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) r(i, j) = lags[i > j ? i - j : j - i];
  }
  return r;
}

CovarianceModel assemble_gamma(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                               FieldKind kind) {
  if (rect.size() > kMaxDenseDimension) {
    throw std::invalid_argument("lattice too large for dense covariance assembly");
  }
  check_distinct_triples(comps);

  CovarianceModel model(rect, kind);
  model.components_.assign(comps.begin(), comps.end());
  model.factors_.reserve(comps.size());

  const Index dim = rect.size();
  model.gamma_ = Eigen::MatrixXcd::Zero(dim, dim);

  for (const auto& comp : comps) {
    SelectionMatrix sel(comp.slope, rect);
    Eigen::VectorXcd mod = build_modulation(comp, rect);
    Eigen::MatrixXd rq = process_covariance(comp.process, sel.rows());

    const auto rows = sel.row_of_column();
    if (kind == FieldKind::complex_valued) {
      for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) {
          model.gamma_(i, j) += std::conj(mod[i]) * rq(rows[i], rows[j]) * mod[j];
        }
      }
    } else {
      // cos(omega v) = Re(D^H) = Re(D); sin(omega v) = Im(D^H) = -Im(D).
      for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) {
          const double weight = mod[i].real() * mod[j].real() + mod[i].imag() * mod[j].imag();
          model.gamma_(i, j) += rq(rows[i], rows[j]) * weight;
        }
      }
    }
    model.factors_.push_back(ComponentFactors{std::move(sel), std::move(mod), std::move(rq)});
  }
  return model;
}

std::vector<Index> CovarianceModel::block_offsets() const {
  std::vector<Index> offsets;
  Index row = 0;
  const int blocks_per_component = kind_ == FieldKind::complex_valued ? 1 : 2;
  for (const auto& f : factors_) {
    for (int b = 0; b < blocks_per_component; ++b) {
      offsets.push_back(row);
      row += f.selection.rows();
    }
  }
  offsets.push_back(row);
  return offsets;
}

Eigen::MatrixXcd CovarianceModel::stacked_coefficients() const {
  const auto offsets = block_offsets();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(offsets.back(), rect_.size());
  std::size_t block = 0;
  for (const auto& f : factors_) {
    if (kind_ == FieldKind::complex_valued) {
      for (Index col = 0; col < rect_.size(); ++col) {
        c(offsets[block] + f.selection.row_of(col), col) = f.modulation[col];
      }
      ++block;
    } else {
      for (Index col = 0; col < rect_.size(); ++col) {
        c(offsets[block] + f.selection.row_of(col), col) = f.modulation[col].real();
        c(offsets[block + 1] + f.selection.row_of(col), col) = -f.modulation[col].imag();
      }
      block += 2;
    }
  }
  return c;
}

Eigen::MatrixXd CovarianceModel::block_process_covariance() const {
  const auto offsets = block_offsets();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(offsets.back(), offsets.back());
  std::size_t block = 0;
  for (const auto& f : factors_) {
    const int copies = kind_ == FieldKind::complex_valued ? 1 : 2;
    for (int k = 0; k < copies; ++k, ++block) {
      const Index sz = f.process_cov.rows();
      r.block(offsets[block], offsets[block], sz, sz) = f.process_cov;
    }
  }
  return r;
}

double factorization_residual(const CovarianceModel& model) {
  const Eigen::MatrixXcd c = model.stacked_coefficients();
  const Eigen::MatrixXcd r = model.block_process_covariance().cast<Complex>();
  const Eigen::MatrixXcd factored = c.adjoint() * r * c;
  const double scale = model.gamma().norm();
  if (scale == 0.0) return factored.norm();
  return (model.gamma() - factored).norm() / scale;
}

namespace {

template <typename Field, typename Matrix>
Matrix accumulate_outer(std::span<const Field> snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("sample covariance needs at least one snapshot");
  const LatticeRect& rect = snapshots.front().rect();
  Matrix acc = Matrix::Zero(rect.size(), rect.size());
  for (const auto& snap : snapshots) {
    if (!(snap.rect() == rect)) throw std::invalid_argument("snapshots have mismatched lattice sizes");
    const auto v = snap.vectorized();
    acc.noalias() += v * v.adjoint();
  }
  acc /= static_cast<double>(snapshots.size());
  return acc;
}

}  // namespace

Eigen::MatrixXcd sample_covariance(std::span<const ComplexField> snapshots) {
  return accumulate_outer<ComplexField, Eigen::MatrixXcd>(snapshots);
}

Eigen::MatrixXd sample_covariance(std::span<const RealField> snapshots) {
  return accumulate_outer<RealField, Eigen::MatrixXd>(snapshots);
}

}  // namespace evanescent
