#include "reconstruct.hpp"

#include <cmath>
#include <string>

namespace ppdm {

std::pair<MatrixXd, VectorXd> center_ppdm(const MatrixXd& d, int anchor_row) {
  require(d.rows() >= 2, errc::invalid_input, "need at least two waypoint rows");
  require(anchor_row >= 0 && anchor_row < d.rows(), errc::invalid_input,
          "anchor row out of range");
  const VectorXd q = d.row(anchor_row).transpose();
  MatrixXd c = d;
  c.rowwise() -= d.row(anchor_row);
  return {c, q};
}

metric_upgrade_result metric_upgrade(const MatrixXd& c, int m, double tol) {
  require(m == 2 || m == 3, errc::invalid_input, "dimension must be 2 or 3");
  const int K = static_cast<int>(c.cols());

  Eigen::BDCSVD<MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (int k = 0; k < s.size(); ++k)
      if (s(k) > tol * s(0)) ++rank;
  if (rank < m)
    fail(errc::degenerate_trajectory_or_room,
         "centered matrix has rank " + std::to_string(rank) + " < " + std::to_string(m) +
             "; the trajectory or the room does not span the space");
  if (rank > m)
    fail(errc::invalid_input, "centered matrix has rank " + std::to_string(rank) +
                                  " > " + std::to_string(m) +
                                  "; not a distance matrix for this dimension");

  const int unknowns = m * (m + 1) / 2;
  if (K < unknowns)
    fail(errc::ambiguous_or_degenerate,
         "underdetermined unit-norm system: " + std::to_string(K) + " walls < " +
             std::to_string(unknowns) + " metric unknowns");

  const MatrixXd p = svd.matrixU().leftCols(m) * s.head(m).asDiagonal();  // N x m
  const MatrixXd qt = svd.matrixV().leftCols(m).transpose();              // m x K

  // Least squares for the symmetric factor: each wall contributes one row of
  // quadratic monomials in its factor column.
  MatrixXd a(K, unknowns);
  for (int k = 0; k < K; ++k) {
    int col = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        a(k, col) = qt(i, k) * qt(j, k) * (i == j ? 1.0 : 2.0);
        ++col;
      }
  }
  Eigen::BDCSVD<MatrixXd> asvd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd sol = asvd.solve(VectorXd::Ones(K));
  metric_upgrade_result out;
  {
    const VectorXd as = asvd.singularValues();
    if (as.size() > 0 && as(0) > 0.0)
      for (int k = 0; k < as.size(); ++k)
        if (as(k) > tol * as(0)) ++out.system_rank;
  }
  const double fit_residual = (a * sol - VectorXd::Ones(K)).cwiseAbs().maxCoeff();
  if (fit_residual > 1e-6)
    fail(errc::ambiguous_or_degenerate,
         "unit-norm system is inconsistent (residual " + std::to_string(fit_residual) +
             "); the matrix is not a distance matrix of this dimension");

  MatrixXd gram(m, m);
  {
    int col = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        gram(i, j) = sol(col);
        gram(j, i) = sol(col);
        ++col;
      }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
  out.gram_min_eig = eig.eigenvalues().minCoeff();
  if (out.gram_min_eig <= 0.0)
    fail(errc::ambiguous_or_degenerate,
         "metric factor is not positive definite; the configuration lies outside the unique "
         "regime");

  const Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    fail(errc::ambiguous_or_degenerate,
         "metric factor is numerically indefinite; the configuration lies outside the unique "
         "regime");
  const MatrixXd l_low = llt.matrixL();
  MatrixXd normals = l_low.transpose() * qt;  // m x K
  for (int k = 0; k < K; ++k) normals.col(k).normalize();
  // Factor columns absorb the inverse: waypoints = -L_low^{-1} P^T.
  const MatrixXd waypoints =
      -l_low.triangularView<Eigen::Lower>().solve(p.transpose());  // m x N

  out.waypoints = waypoints;
  out.normals = normals;
  return out;
}

reconstruction_result reconstruct_configuration(const MatrixXd& d, int m, double tol,
                                                int anchor_row) {
  require(d.allFinite(), errc::invalid_input, "matrix entries must be finite");
  require(d.cols() >= 1, errc::invalid_input, "need at least one wall column");
  auto [c, q] = center_ppdm(d, anchor_row);
  metric_upgrade_result mu = metric_upgrade(c, m, tol);

  reconstruction_result out;
  out.config.dimension = m;
  for (int k = 0; k < d.cols(); ++k) out.config.planes.push_back({mu.normals.col(k), q(k)});
  for (int n = 0; n < d.rows(); ++n) out.config.waypoints.push_back(mu.waypoints.col(n));
  validate(out.config);
  out.ppdm_residual = (compute_ppdm(out.config) - d).cwiseAbs().maxCoeff();
  out.gram_conditioning = mu.gram_min_eig;
  out.system_rank = mu.system_rank;
  out.underdetermined_metric = mu.system_rank < m * (m + 1) / 2;
  return out;
}

}  // namespace ppdm
