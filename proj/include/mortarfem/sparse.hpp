#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "mortarfem/dof_map.hpp"
#include "mortarfem/errors.hpp"
#include "mortarfem/mortar.hpp"

namespace mortarfem {

/// Symmetric sparse matrix. Only the upper triangle is authoritative; the
/// mirrored full matrix is materialized once, so symmetry holds exactly and
/// no explicit zeros are stored.
class SparseSymMatrix {
public:
  SparseSymMatrix() = default;

  /// Expects the complete entry set of a symmetric matrix (both triangles,
  /// as element assembly produces). Lower-triangle entries are duplicates of
  /// their mirrored partners and are dropped, not folded in.
  static SparseSymMatrix from_triplets(int dim, const std::vector<Eigen::Triplet<double>>& ts) {
    std::vector<Eigen::Triplet<double>> upper;
    upper.reserve(ts.size() / 2 + static_cast<std::size_t>(dim));
    for (const auto& t : ts)
      if (t.row() <= t.col()) upper.emplace_back(t.row(), t.col(), t.value());
    Eigen::SparseMatrix<double> up(dim, dim);
    up.setFromTriplets(upper.begin(), upper.end());
    up.prune(0.0, 0.0);
    return from_upper(up);
  }

  /// Canonicalize an (approximately symmetric) sparse matrix by mirroring
  /// its upper triangle.
  static SparseSymMatrix from_upper_of(const Eigen::SparseMatrix<double>& m) {
    Eigen::SparseMatrix<double> up = m.triangularView<Eigen::Upper>();
    up.prune(0.0, 0.0);
    return from_upper(up);
  }

  int dim() const { return static_cast<int>(full_.rows()); }
  const Eigen::SparseMatrix<double>& matrix() const { return full_; }

  Eigen::VectorXd operator*(const Eigen::VectorXd& v) const { return full_ * v; }

private:
  static SparseSymMatrix from_upper(const Eigen::SparseMatrix<double>& up) {
    SparseSymMatrix out;
    out.full_ = up.selfadjointView<Eigen::Upper>();
    out.full_.makeCompressed();
    return out;
  }

  Eigen::SparseMatrix<double> full_;
};

/// Prolongation from reduced (constrained) coefficients to the full broken
/// space: identity on free dofs, coupling rows on slaves, zero rows on
/// Dirichlet dofs. Full column rank by construction.
inline Eigen::SparseMatrix<double> build_prolongation(
    const DofMap& dm, const std::vector<InterfaceSegment>& interfaces,
    const std::vector<CouplingMap>& couplings) {
  if (couplings.size() != interfaces.size())
    throw ValidationError("build_prolongation: coupling count does not match interfaces");
  std::vector<Eigen::Triplet<double>> ts;
  for (int g = 0; g < dm.full_count(); ++g)
    if (dm.is_free(g)) ts.emplace_back(g, dm.full_to_reduced[g], 1.0);

  for (std::size_t gi = 0; gi < interfaces.size(); ++gi) {
    const InterfaceSegment& seg = interfaces[gi];
    const CouplingMap& cm = couplings[gi];
    const std::vector<int>& nm = seg.nonmortar.edge_nodes;
    const std::vector<int>& mo = seg.mortar.edge_nodes;
    if (cm.mortar_dim != static_cast<int>(mo.size()) ||
        cm.slave_count != static_cast<int>(nm.size()) - 2)
      throw ValidationError("build_prolongation: coupling shape does not match interface " +
                            std::to_string(seg.id));
    // master full ids in coupling column order: mortar trace, then the two
    // nonmortar endpoints
    std::vector<int> masters;
    masters.reserve(mo.size() + 2);
    for (const int local : mo) masters.push_back(dm.global_id(seg.mortar.subdomain, local));
    masters.push_back(dm.global_id(seg.nonmortar.subdomain, nm.front()));
    masters.push_back(dm.global_id(seg.nonmortar.subdomain, nm.back()));

    for (int s = 0; s < cm.slave_count; ++s) {
      const int slave = dm.global_id(seg.nonmortar.subdomain, nm[s + 1]);
      for (std::size_t c = 0; c < masters.size(); ++c) {
        const int mg = masters[c];
        const double v = cm.coeff(s, static_cast<int>(c));
        if (v == 0.0) continue;
        if (dm.cls[mg] == DofClass::dirichlet) continue; // master pinned to zero
        const int r = dm.full_to_reduced[mg];
        if (r < 0)
          throw ValidationError("build_prolongation: master dof is eliminated; "
                                "partition topology is not supported");
        ts.emplace_back(slave, r, v);
      }
    }
  }
  Eigen::SparseMatrix<double> p(dm.full_count(), dm.reduced_count());
  p.setFromTriplets(ts.begin(), ts.end());
  p.makeCompressed();
  return p;
}

/// Galerkin reduction P^T K P onto the constrained space.
inline SparseSymMatrix reduce(const SparseSymMatrix& k, const Eigen::SparseMatrix<double>& p) {
  if (k.dim() != p.rows())
    throw ValidationError("reduce: matrix and prolongation dimensions do not match");
  const Eigen::SparseMatrix<double> prod =
      (p.transpose() * k.matrix() * p).pruned();
  return SparseSymMatrix::from_upper_of(prod);
}

inline Eigen::VectorXd reduce(const Eigen::VectorXd& full, const Eigen::SparseMatrix<double>& p) {
  return p.transpose() * full;
}

} // namespace mortarfem
