#include "sdp.hpp"

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <vector>

namespace vlcsec {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

using Eigen::Matrix2cd;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector2cd;
using Eigen::Vector4d;
using Eigen::VectorXd;

// ---- 4x4 real symmetric embedding of complex Hermitian 2x2 matrices ----
//
// S = A + iB (A = Re S symmetric, B = Im S antisymmetric) maps to
// X = [[A, -B], [B, A]]. The map is an algebra homomorphism, it preserves
// positive semidefiniteness, and tr(X Y) = 2 Re tr(S M^H).

Matrix4d embed(const Matrix2cd& m) {
  Matrix4d x;
  const Eigen::Matrix2d re = m.real();
  const Eigen::Matrix2d im = m.imag();
  x << re(0, 0), re(0, 1), -im(0, 0), -im(0, 1),
       re(1, 0), re(1, 1), -im(1, 0), -im(1, 1),
       im(0, 0), im(0, 1),  re(0, 0),  re(0, 1),
       im(1, 0), im(1, 1),  re(1, 0),  re(1, 1);
  return x;
}

Matrix2cd unembed(const Matrix4d& x) {
  Matrix2cd m;
  m.real() << x(0, 0), x(0, 1), x(1, 0), x(1, 1);
  m.imag() << x(2, 0), x(2, 1), x(3, 0), x(3, 1);
  return m;
}

// complex-trace inner product: <A,S> = tr(A S) for Hermitian A, S
double ip(const Matrix4d& a, const Matrix4d& b) {
  return 0.5 * (a.cwiseProduct(b)).sum();
}

// Coordinates of a structured symmetric matrix in the Hermitian basis
// {E11, E22, sym offdiag, skew offdiag}.
Vector4d coords(const Matrix4d& x) {
  return Vector4d(x(0, 0), x(1, 1), x(0, 1), x(2, 1));
}

Matrix4d basis_matrix(int j) {
  Matrix2cd m = Matrix2cd::Zero();
  switch (j) {
    case 0: m(0, 0) = 1.0; break;
    case 1: m(1, 1) = 1.0; break;
    case 2: m(0, 1) = m(1, 0) = 1.0; break;
    default:
      m(0, 1) = std::complex<double>(0.0, 1.0);
      m(1, 0) = std::complex<double>(0.0, -1.0);
  }
  return embed(m);
}

Matrix4d sym(const Matrix4d& m) { return 0.5 * (m + m.transpose()); }

// ---- generic mixed SDP/LP cone program ----
//
//   min <C,S> + c'u   s.t.  <A_k,S> + a_k'u = b_k,  S psd,  u >= 0
//
// with one embedded 2x2-Hermitian block and m nonnegative scalars. Newton
// directions use the symmetrized XZ+ZX linearization with a Mehrotra
// predictor-corrector; the whole KKT system is formed densely (<= 19x19).

struct ConicProblem {
  Matrix4d C = Matrix4d::Zero();
  VectorXd c;                   // m
  std::vector<Matrix4d> A;      // p matrices
  MatrixXd Au;                  // p x m
  VectorXd b;                   // p
};

// strictly feasible starting point (both sides), built per problem; a
// feasible path-following run is far better conditioned than a cold start
struct ConicStart {
  Matrix4d X = Matrix4d::Identity();
  VectorXd u;
  Matrix4d Z = Matrix4d::Identity();
  VectorXd z;
  VectorXd y;
};

struct ConicResult {
  Matrix4d X = Matrix4d::Identity();
  VectorXd u;
  VectorXd y;
  double pobj = 0.0;
  double gap = 0.0;       // complementarity gap, absolute
  double norm_gap = 0.0;  // gap / max(1, |pobj|)
  int iterations = 0;
  bool converged = false;
};

class ConicSolver {
 public:
  explicit ConicSolver(const ConicProblem& prob)
      : P(prob), m(static_cast<int>(prob.c.size())),
        p(static_cast<int>(prob.b.size())), nu(2.0 + m) {
    for (int j = 0; j < 4; ++j) B[j] = basis_matrix(j);
  }

  ConicResult solve(int max_iters, double gap_tol,
                    const ConicStart* start = nullptr) {
    if (start) {
      X = start->X;
      u = start->u;
      Z = start->Z;
      z = start->z;
      y = start->y;
      bnorm_ = P.b.size() ? P.b.cwiseAbs().maxCoeff() : 0.0;
      cnorm_ = std::max(P.C.cwiseAbs().maxCoeff(),
                        P.c.size() ? P.c.cwiseAbs().maxCoeff() : 0.0);
    } else {
      init_point();
    }
    stall_ref_ = std::numeric_limits<double>::infinity();
    stall_count_ = 0;
    rescue_pending_ = false;
    ConicResult best;
    best.u = u; best.y = y;
    double best_gap = std::numeric_limits<double>::infinity();

    for (int it = 0; it < max_iters; ++it) {
      const double gap = ip(X, Z) + u.dot(z);
      if (!std::isfinite(gap)) break;  // blow-up; caller retries
      const double mu_bar = gap / nu;
      const double pobj = ip(P.C, X) + P.c.dot(u);

      VectorXd rp(p);
      for (int k = 0; k < p; ++k)
        rp(k) = P.b(k) - ip(P.A[k], X) - P.Au.row(k).dot(u);
      Matrix4d Rd = P.C - Z;
      for (int k = 0; k < p; ++k) Rd -= y(k) * P.A[k];
      VectorXd rdu = P.c - P.Au.transpose() * y - z;

      const double pres = rp.cwiseAbs().maxCoeff() / (1.0 + bnorm_);
      const double dres =
          std::max(coords(Rd).cwiseAbs().maxCoeff(),
                   rdu.size() ? rdu.cwiseAbs().maxCoeff() : 0.0) /
          (1.0 + cnorm_);
      const double ngap = gap / std::max(1.0, std::abs(pobj));

      if (ngap < best_gap && pres < 1e-7 && dres < 1e-7) {
        best_gap = ngap;
        snapshot(best, pobj, gap, ngap);
      }
      if (std::getenv("VLCSEC_SDP_TRACE"))
        std::fprintf(stderr,
                     "it=%3d gap=%10.3e ngap=%10.3e pres=%10.3e dres=%10.3e "
                     "pobj=%12.5e ap=%8.2e ad=%8.2e sig=%8.2e\n",
                     it, gap, ngap, pres, dres, pobj, last_ap_, last_ad_,
                     last_sigma_);

      if (pres <= 1e-10 && dres <= 1e-10 && ngap <= gap_tol) {
        snapshot(best, pobj, gap, ngap);
        best.converged = true;
        best.iterations = it;
        return best;
      }

      // KKT matrix, shared by predictor and corrector
      factorize();

      // predictor: sigma = 0, plain complementarity residual
      Matrix4d Rc = -sym(X * Z);
      VectorXd rcu = -(u.array() * z.array()).matrix();
      Direction aff = solve_dir(rp, Rd, rdu, Rc, rcu);
      const double ap_aff = step_len(X, aff.dX, u, aff.du);
      const double ad_aff = step_len(Z, aff.dZ, z, aff.dz);

      const double gap_aff =
          ip(X + ap_aff * aff.dX, Z + ad_aff * aff.dZ) +
          (u + ap_aff * aff.du).dot(z + ad_aff * aff.dz);
      double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
      sigma = std::clamp(sigma, 1e-8, 1.0);

      // steps collapsed on the previous round: take one pure centering
      // step to pull the iterate back toward the path
      const bool rescue = rescue_pending_;
      rescue_pending_ = false;
      if (rescue) {
        sigma = 1.0;
        aff.dX.setZero();
        aff.dZ.setZero();
        aff.du.setZero();
        aff.dz.setZero();
      }

      // corrector with second-order term; damp the term when the affine
      // direction is so large that its product would swamp the system
      Matrix4d corr = sym(aff.dX * aff.dZ);
      VectorXd corru = (aff.du.array() * aff.dz.array()).matrix();
      const double corr_mag =
          std::max(corr.cwiseAbs().maxCoeff(),
                   m ? corru.cwiseAbs().maxCoeff() : 0.0);
      if (corr_mag > 10.0 * gap) {
        const double damp = 10.0 * gap / corr_mag;
        corr *= damp;
        corru *= damp;
      }
      Rc = sigma * mu_bar * Matrix4d::Identity() - sym(X * Z) - corr;
      rcu = sigma * mu_bar * VectorXd::Ones(m) -
            (u.array() * z.array()).matrix() - corru;
      Direction dir = solve_dir(rp, Rd, rdu, Rc, rcu);

      double ap = 0.99 * step_len(X, dir.dX, u, dir.du);
      double ad = 0.99 * step_len(Z, dir.dZ, z, dir.dz);
      ap = std::min(1.0, ap);
      ad = std::min(1.0, ad);
      // off-path iterates move both sides together; asymmetric steps are
      // only worth taking once the residuals are essentially gone
      if (pres > 1e-9 || dres > 1e-9) ap = ad = std::min(ap, ad);
      if (std::min(ap, ad) < 1e-3 && !rescue) rescue_pending_ = true;

      // keep iterates safely inside the cone
      for (int guard = 0; guard < 10; ++guard) {
        Matrix4d Xn = X + ap * dir.dX;
        if (Eigen::LLT<Matrix4d>(Xn).info() == Eigen::Success) break;
        ap *= 0.8;
      }
      for (int guard = 0; guard < 10; ++guard) {
        Matrix4d Zn = Z + ad * dir.dZ;
        if (Eigen::LLT<Matrix4d>(Zn).info() == Eigen::Success) break;
        ad *= 0.8;
      }

      X += ap * dir.dX;
      u += ap * dir.du;
      Z += ad * dir.dZ;
      z += ad * dir.dz;
      y += ad * dir.dy;
      last_ap_ = ap;
      last_ad_ = ad;
      last_sigma_ = sigma;
      best.iterations = it + 1;

      // give up early when the gap has flatlined; the caller can retry
      // from a different starting point
      if (gap > 0.98 * stall_ref_) {
        if (++stall_count_ >= 15) break;
      } else {
        stall_count_ = 0;
      }
      stall_ref_ = std::min(stall_ref_, gap);

      if (gap < 1e-300) break;
    }

    // not converged to tolerance: report the best well-behaved iterate
    if (std::isinf(best_gap)) {
      const double pobj = ip(P.C, X) + P.c.dot(u);
      const double gap = ip(X, Z) + u.dot(z);
      snapshot(best, pobj, gap, gap / std::max(1.0, std::abs(pobj)));
    }
    return best;
  }

 private:
  struct Direction {
    Matrix4d dX, dZ;
    VectorXd du, dy, dz;
  };

  void snapshot(ConicResult& r, double pobj, double gap, double ngap) {
    r.X = X; r.u = u; r.y = y;
    r.pobj = pobj; r.gap = gap; r.norm_gap = ngap;
  }

  void init_point() {
    double scale = 1.0;
    for (const auto& a : P.A) scale = std::max(scale, a.cwiseAbs().maxCoeff());
    scale = std::max(scale, P.C.cwiseAbs().maxCoeff());
    bnorm_ = P.b.size() ? P.b.cwiseAbs().maxCoeff() : 0.0;
    cnorm_ = std::max(P.C.cwiseAbs().maxCoeff(),
                      P.c.size() ? P.c.cwiseAbs().maxCoeff() : 0.0);

    X = Matrix4d::Identity() * std::max(1.0, bnorm_);
    u = VectorXd::Constant(m, std::max(1.0, bnorm_));
    Z = Matrix4d::Identity() * scale;
    z = VectorXd::Constant(m, scale);
    y = VectorXd::Zero(p);
  }

  // Assemble and factor the dense KKT matrix for the current (X, Z, u, z).
  void factorize() {
    const int n = 8 + 2 * m + p;
    K.setZero(n, n);
    const int off_du = 4, off_dy = 4 + m, off_z4 = 4 + m + p,
              off_dz = 8 + m + p;

    // primal equalities
    for (int k = 0; k < p; ++k) {
      for (int j = 0; j < 4; ++j) K(k, j) = ip(P.A[k], B[j]);
      for (int i = 0; i < m; ++i) K(k, off_du + i) = P.Au(k, i);
    }
    // dual matrix block (4 coordinate equations)
    for (int l = 0; l < 4; ++l) {
      const int row = p + l;
      K(row, off_z4 + l) = 1.0;
      for (int k = 0; k < p; ++k) K(row, off_dy + k) = coords(P.A[k])(l);
    }
    // dual scalar block
    for (int i = 0; i < m; ++i) {
      const int row = p + 4 + i;
      for (int k = 0; k < p; ++k) K(row, off_dy + k) = P.Au(k, i);
      K(row, off_dz + i) = 1.0;
    }
    // matrix complementarity: sym(dX Z + X dZ) in coordinates
    for (int j = 0; j < 4; ++j) {
      const Vector4d colx = coords(sym(B[j] * Z));
      const Vector4d colz = coords(sym(X * B[j]));
      for (int l = 0; l < 4; ++l) {
        K(p + 4 + m + l, j) = colx(l);
        K(p + 4 + m + l, off_z4 + j) = colz(l);
      }
    }
    // scalar complementarity
    for (int i = 0; i < m; ++i) {
      const int row = p + 8 + m + i;
      K(row, off_du + i) = z(i);
      K(row, off_dz + i) = u(i);
    }

    // two-sided equilibration: the complementarity rows carry the scales
    // of Z and X, which can sit many orders of magnitude apart
    row_scale_.setOnes(n);
    col_scale_.setOnes(n);
    MatrixXd Ks = K;
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < n; ++i) {
        const double r = Ks.row(i).cwiseAbs().maxCoeff();
        if (r > 0.0) {
          const double s = std::exp2(-std::round(std::log2(r)));
          Ks.row(i) *= s;
          row_scale_(i) *= s;
        }
      }
      for (int j = 0; j < n; ++j) {
        const double c = Ks.col(j).cwiseAbs().maxCoeff();
        if (c > 0.0) {
          const double s = std::exp2(-std::round(std::log2(c)));
          Ks.col(j) *= s;
          col_scale_(j) *= s;
        }
      }
    }
    lu.compute(Ks);
  }

  Direction solve_dir(const VectorXd& rp, const Matrix4d& Rd,
                      const VectorXd& rdu, const Matrix4d& Rc,
                      const VectorXd& rcu) {
    const int n = 8 + 2 * m + p;
    VectorXd rhs(n);
    rhs.segment(0, p) = rp;
    rhs.segment(p, 4) = coords(Rd);
    rhs.segment(p + 4, m) = rdu;
    rhs.segment(p + 4 + m, 4) = coords(Rc);
    rhs.segment(p + 8 + m, m) = rcu;

    // solve the equilibrated system with iterative refinement
    const auto scaled_solve = [&](const VectorXd& r) -> VectorXd {
      return col_scale_.asDiagonal() *
             lu.solve((row_scale_.array() * r.array()).matrix());
    };
    VectorXd q = scaled_solve(rhs);
    for (int ref = 0; ref < 2; ++ref) q += scaled_solve(rhs - K * q);

    Direction d;
    d.dX.setZero();
    d.dZ.setZero();
    for (int j = 0; j < 4; ++j) {
      d.dX += q(j) * B[j];
      d.dZ += q(4 + m + p + j) * B[j];
    }
    d.du = q.segment(4, m);
    d.dy = q.segment(4 + m, p);
    d.dz = q.segment(8 + m + p, m);
    return d;
  }

  // fraction-to-boundary step for (matrix, scalars) jointly
  static double step_len(const Matrix4d& M, const Matrix4d& dM,
                         const VectorXd& v, const VectorXd& dv) {
    double alpha = std::numeric_limits<double>::infinity();
    Eigen::LLT<Matrix4d> llt(M);
    if (llt.info() == Eigen::Success) {
      const Matrix4d L = llt.matrixL();
      const Matrix4d W =
          L.triangularView<Eigen::Lower>().solve(Matrix4d(dM)).transpose();
      const Matrix4d G = L.triangularView<Eigen::Lower>().solve(W);
      const double lmin =
          Eigen::SelfAdjointEigenSolver<Matrix4d>(sym(G)).eigenvalues()(0);
      if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    } else {
      alpha = 1e-3;
    }
    for (int i = 0; i < v.size(); ++i)
      if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
    return alpha;
  }

  const ConicProblem& P;
  const int m, p;
  const double nu;
  Matrix4d B[4];
  Matrix4d X = Matrix4d::Identity(), Z = Matrix4d::Identity();
  VectorXd u, z, y;
  MatrixXd K;
  Eigen::FullPivLU<MatrixXd> lu;
  VectorXd row_scale_, col_scale_;
  double bnorm_ = 0.0, cnorm_ = 0.0;
  double last_ap_ = 0.0, last_ad_ = 0.0, last_sigma_ = 0.0;
  double stall_ref_ = std::numeric_limits<double>::infinity();
  int stall_count_ = 0;
  bool rescue_pending_ = false;
};

Matrix2cd selector(int i) {
  Matrix2cd e = Matrix2cd::Zero();
  e(i, i) = 1.0;
  return e;
}

}  // namespace

double secrecy_ratio(const Vector2cd& hD, const Vector2cd& hE,
                     const Vector2cd& w, double sigma_rf_sq) {
  const double num = sigma_rf_sq + std::norm(hD.dot(w));
  const double den = sigma_rf_sq + std::norm(hE.dot(w));
  return num / den;
}

namespace {

struct CcFormulation {
  ConicProblem prob;
  Eigen::Matrix2d T = Eigen::Matrix2d::Identity();
  ConicStart feasible_start;
  double roof = 1.0;
};

// Build the normalized Charnes-Cooper problem. With `precondition` a
// diagonal congruence S = T Svar T pulls the eavesdropper row down to unit
// scale; that removes the thin primal valley seen at large eavesdropper
// SNR at the cost of a higher floating-point floor on the gap, so it is
// used as the retry formulation only.
CcFormulation build_cc(const Matrix2cd& HD, const Matrix2cd& HE, double pr1,
                       double pr2, double sigma_rf_sq, bool precondition) {
  const double pbar = std::max(pr1, pr2);
  const double chan_scale = pbar / sigma_rf_sq;

  CcFormulation f;
  Eigen::Vector2d t(1.0, 1.0);
  if (precondition) {
    const Eigen::Vector2d he_abs(
        std::sqrt(chan_scale) * std::sqrt(std::max(0.0, HE(0, 0).real())),
        std::sqrt(chan_scale) * std::sqrt(std::max(0.0, HE(1, 1).real())));
    const double he_max = he_abs.maxCoeff();
    if (he_max > 1.0)
      for (int i = 0; i < 2; ++i)
        t(i) = 1.0 / std::max(he_abs(i), 1e-9 * he_max);
  }
  f.T = t.asDiagonal();

  ConicProblem& prob = f.prob;
  prob.C = -embed(Matrix2cd(f.T * HD * chan_scale * f.T));
  prob.c = VectorXd::Zero(3);
  prob.c(0) = -1.0;
  prob.A.resize(3);
  prob.Au.setZero(3, 3);
  prob.b.setZero(3);

  prob.A[0] = embed(Matrix2cd(f.T * HE * chan_scale * f.T));
  prob.Au(0, 0) = 1.0;
  prob.b(0) = 1.0;
  const double p1h = pr1 / pbar / (t(0) * t(0));
  const double p2h = pr2 / pbar / (t(1) * t(1));
  for (int i = 0; i < 2; ++i) {
    prob.A[1 + i] = embed(selector(i));
    prob.Au(1 + i, 0) = -(i == 0 ? p1h : p2h);
    prob.Au(1 + i, 1 + i) = 1.0;
  }

  // strictly feasible primal start: S = eps I inside the power caps, the
  // normalization equality absorbed by mu
  const double tr_he = 0.5 * prob.A[0].trace();
  const double pmin = std::min(p1h, p2h);
  double eps = 0.25 * std::min(1.0, pmin);
  if (tr_he > 0.0) eps = std::min(eps, 0.25 / tr_he);
  ConicStart& start = f.feasible_start;
  start.X = eps * Matrix4d::Identity();
  start.u = VectorXd(3);
  start.u(0) = 1.0 - eps * tr_he;  // mu_hat
  start.u(1) = start.u(0) * p1h - eps;
  start.u(2) = start.u(0) * p2h - eps;

  // strictly feasible dual start: lift the diagonal multipliers until the
  // slack matrix dominates the objective matrix
  const double lmax =
      Eigen::SelfAdjointEigenSolver<Matrix4d>(-prob.C).eigenvalues()(3);
  const double lift = lmax + 1.0;
  start.y = VectorXd(3);
  start.y(0) = -(2.0 + lift * (p1h + p2h));
  start.y(1) = -lift;
  start.y(2) = -lift;
  start.Z = prob.C - start.y(0) * prob.A[0] - start.y(1) * prob.A[1] -
            start.y(2) * prob.A[2];
  start.z = prob.c - prob.Au.transpose() * start.y;

  f.roof = 1.0 + p1h * 0.5 * prob.A[1].cwiseProduct(-prob.C).sum() +
           p2h * 0.5 * prob.A[2].cwiseProduct(-prob.C).sum();
  return f;
}

// centered primal point X = mu0 Z^-1 paired with the feasible dual: every
// complementarity product equals mu0, trading primal feasibility (which
// the iteration restores) for centrality
ConicStart centered_start(const CcFormulation& f, double mu0) {
  ConicStart s = f.feasible_start;
  s.X = mu0 * f.feasible_start.Z.inverse();
  s.X = 0.5 * (s.X + s.X.transpose().eval());
  s.u = (mu0 / f.feasible_start.z.array()).matrix();
  return s;
}

}  // namespace

SdpOutcome solve_secrecy_cc_sdp(const Matrix2cd& HD, const Matrix2cd& HE,
                                double pr1, double pr2, double sigma_rf_sq) {
  if (!(pr1 > 0.0) || !(pr2 > 0.0))
    throw ConfigError("solve_secrecy_cc_sdp: relay powers must be > 0");
  if (!(sigma_rf_sq > 0.0))
    throw ConfigError("solve_secrecy_cc_sdp: sigma_rf_sq must be > 0");
  const double pbar = std::max(pr1, pr2);

  // attempt ladder: plain formulation from feasible and centered starts,
  // then the preconditioned formulation, then a cold start
  ConicResult res;
  res.norm_gap = std::numeric_limits<double>::infinity();
  Eigen::Matrix2d T_used = Eigen::Matrix2d::Identity();
  const auto attempt = [&](const CcFormulation& f, const ConicStart* s) {
    if (res.converged) return;
    ConicSolver solver(f.prob);
    ConicResult r = solver.solve(100, 1e-9, s);
    if (r.converged || r.norm_gap < res.norm_gap) {
      res = r;
      T_used = f.T;
    }
  };

  const CcFormulation plain =
      build_cc(HD, HE, pr1, pr2, sigma_rf_sq, false);
  attempt(plain, &plain.feasible_start);
  if (!res.converged) {
    for (const double mu0 : {plain.roof, std::sqrt(plain.roof), 1.0}) {
      const ConicStart s = centered_start(plain, mu0);
      attempt(plain, &s);
    }
  }
  if (!res.converged) {
    const CcFormulation pre =
        build_cc(HD, HE, pr1, pr2, sigma_rf_sq, true);
    attempt(pre, &pre.feasible_start);
    for (const double mu0 : {pre.roof, std::sqrt(pre.roof), 1.0}) {
      if (res.converged) break;
      const ConicStart s = centered_start(pre, mu0);
      attempt(pre, &s);
    }
    if (!res.converged) attempt(pre, nullptr);
  }

  SdpOutcome out;
  out.iterations = res.iterations;
  out.duality_gap = res.norm_gap;
  out.objective = -res.pobj;  // homogenized objective = secrecy ratio
  // undo the congruence and the (sigma^2/pbar, sigma^2) normalization
  out.scalar = res.u(0) / sigma_rf_sq;
  out.matrix =
      Matrix2cd(T_used * unembed(res.X) * T_used) * (pbar / sigma_rf_sq);

  const Eigen::SelfAdjointEigenSolver<Matrix2cd> eig(out.matrix);
  const double l0 = std::max(0.0, eig.eigenvalues()(0));
  const double l1 = std::max(0.0, eig.eigenvalues()(1));
  out.rank_ratio = l1 > 0.0 ? l0 / l1 : 0.0;
  out.status = (res.converged || res.norm_gap <= 1e-7)
                   ? SdpStatus::optimal
                   : SdpStatus::near_rank_one;
  return out;
}

SdpOutcome solve_an_power_sdp(const Matrix2cd& HD, const Vector2cd& hD,
                              double pr1, double pr2, double rth_d,
                              double sigma_rf_sq, const AnSdpOptions& opt) {
  if (!(pr1 > 0.0) || !(pr2 > 0.0))
    throw ConfigError("solve_an_power_sdp: relay powers must be > 0");
  const double h1 = std::norm(hD(0));
  const double h2 = std::norm(hD(1));
  if (!(h1 + h2 > 0.0))
    throw ConfigError("solve_an_power_sdp: hD must be nonzero");

  const double req = sigma_rf_sq * (std::exp2(2.0 * rth_d) - 1.0);
  const double best_dest =
      std::pow(std::sqrt(pr1) * std::abs(hD(0)) +
                   std::sqrt(pr2) * std::abs(hD(1)),
               2.0);
  SdpOutcome out;
  if (best_dest < req * (1.0 - 1e-12)) {
    out.status = SdpStatus::infeasible;
    return out;
  }

  // jamming power seen by relay i: beta^2 * g_i
  const double g1 = opt.printed_power_rows ? h1 : h2;
  const double g2 = h1;
  const double pbar = std::max(pr1, pr2);
  const double gbar = std::max(g1, g2);
  const double chan_scale = pbar / sigma_rf_sq;

  ConicProblem prob;
  prob.C = Matrix4d::Zero();
  prob.c = VectorXd::Zero(4);
  prob.c(0) = -1.0;  // max gamma = beta^2 * gbar / pbar
  prob.A.resize(3);
  prob.Au.setZero(3, 4);
  prob.b.setZero(3);
  for (int i = 0; i < 2; ++i) {
    prob.A[i] = embed(selector(i));
    prob.Au(i, 0) = (i == 0 ? g1 : g2) / gbar;
    prob.Au(i, 1 + i) = 1.0;
    prob.b(i) = (i == 0 ? pr1 : pr2) / pbar;
  }
  prob.A[2] = embed(Matrix2cd(HD * chan_scale));
  prob.Au(2, 3) = -1.0;
  prob.b(2) = req / sigma_rf_sq;

  // strictly feasible dual start (primal feasibility can be thin when the
  // QoS is close to its boundary, so the primal side starts cold)
  const double lmax =
      Eigen::SelfAdjointEigenSolver<Matrix4d>(prob.A[2]).eigenvalues()(3);
  ConicStart start;
  start.y = VectorXd(3);
  start.y(2) = 1.0;
  start.y(0) = -(lmax + 1.0);
  start.y(1) = -(lmax + 1.0);
  start.Z = prob.C - start.y(0) * prob.A[0] - start.y(1) * prob.A[1] -
            start.y(2) * prob.A[2];
  start.z = prob.c - prob.Au.transpose() * start.y;
  const double pscale = std::max({1.0, prob.b(0), prob.b(1), prob.b(2)});
  start.X = 0.25 * std::min(prob.b(0), prob.b(1)) * Matrix4d::Identity();
  start.u = VectorXd::Constant(4, pscale);

  ConicSolver solver(prob);
  ConicResult res = solver.solve(100, 1e-9, &start);

  out.iterations = res.iterations;
  out.duality_gap = res.norm_gap;
  const double gamma = std::max(0.0, res.u(0)) * pbar / gbar;
  out.scalar = std::sqrt(gamma);
  out.objective = out.scalar;
  out.matrix = unembed(res.X) * pbar;  // W_hat = W / pbar

  const Eigen::SelfAdjointEigenSolver<Matrix2cd> eig(out.matrix);
  const double l0 = std::max(0.0, eig.eigenvalues()(0));
  const double l1 = std::max(0.0, eig.eigenvalues()(1));
  out.rank_ratio = l1 > 0.0 ? l0 / l1 : 0.0;
  out.status = (res.converged || res.norm_gap <= 1e-7)
                   ? SdpStatus::optimal
                   : SdpStatus::near_rank_one;
  return out;
}

RankOneExtraction extract_rank_one(const Matrix2cd& S) {
  RankOneExtraction out;
  const Eigen::SelfAdjointEigenSolver<Matrix2cd> eig(S);
  const double l0 = eig.eigenvalues()(0);
  const double l1 = eig.eigenvalues()(1);
  if (l1 <= 0.0) return out;  // zero (or negative) matrix -> zero vector
  out.v = std::sqrt(l1) * eig.eigenvectors().col(1);
  out.rank_ratio = std::max(0.0, l0) / l1;
  out.flagged = out.rank_ratio > 1e-6;
  return out;
}

namespace {
Vector2cd scale_to_caps(const Vector2cd& v, const Eigen::Vector2d& caps) {
  double s = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    const double a = std::abs(v(i));
    if (a > 0.0) s = std::min(s, std::sqrt(caps(i)) / a);
  }
  if (std::isinf(s)) return Vector2cd::Zero();
  return s * v;
}
}  // namespace

Eigen::Vector2cd gaussian_randomization(
    const Matrix2cd& S, const Eigen::Vector2d& power_caps,
    const std::function<double(const Vector2cd&)>& evaluate, int n_samples,
    RngStream& rng) {
  const Eigen::SelfAdjointEigenSolver<Matrix2cd> eig(S);
  Eigen::Matrix2cd L = eig.eigenvectors();
  for (int i = 0; i < 2; ++i)
    L.col(i) *= std::sqrt(std::max(0.0, eig.eigenvalues()(i)));

  Vector2cd best = scale_to_caps(extract_rank_one(S).v, power_caps);
  double best_val = evaluate(best);
  for (int s = 0; s < n_samples; ++s) {
    const Vector2cd g(rng.cnormal(), rng.cnormal());
    const Vector2cd cand = scale_to_caps(L * g, power_caps);
    const double val = evaluate(cand);
    if (val > best_val) {
      best_val = val;
      best = cand;
    }
  }
  return best;
}

namespace {
// golden-section maximization on [lo, hi]
template <typename F>
double golden_max(const F& f, double lo, double hi, int iters = 60) {
  const double phi = 0.61803398874989484820;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}
}  // namespace

BeamformerSolution brute_force_oracle(const Vector2cd& hD, const Vector2cd& hE,
                                      double pr1, double pr2,
                                      double sigma_rf_sq, int grid_density) {
  if (grid_density < 64)
    throw ConfigError("brute_force_oracle: grid_density must be >= 64");
  const double r1max = std::sqrt(pr1);
  const double r2max = std::sqrt(pr2);
  const int n_r = grid_density;
  const int n_phase = 2 * grid_density;

  const auto ratio_at = [&](double r1, double r2, double d) {
    const Vector2cd w(r1, std::polar(r2, d));
    return secrecy_ratio(hD, hE, w, sigma_rf_sq);
  };

  struct Cand {
    double r1, r2, d, val;
  };
  std::vector<Cand> seeds;
  const auto push_seed = [&](double r1, double r2, double d) {
    r1 = std::clamp(r1, 0.0, r1max);
    r2 = std::clamp(r2, 0.0, r2max);
    seeds.push_back({r1, r2, d, ratio_at(r1, r2, d)});
  };

  // grid scan, keeping the best point of every phase slice
  for (int k = 0; k < n_phase; ++k) {
    const double d = kTwoPi * k / n_phase;
    Cand slice{0.0, 0.0, d, ratio_at(0.0, 0.0, d)};
    for (int i = 0; i < n_r; ++i) {
      const double r1 = r1max * i / (n_r - 1);
      for (int j = 0; j < n_r; ++j) {
        const double r2 = r2max * j / (n_r - 1);
        const double v = ratio_at(r1, r2, d);
        if (v > slice.val) slice = {r1, r2, d, v};
      }
    }
    seeds.push_back(slice);
  }
  std::sort(seeds.begin(), seeds.end(),
            [](const Cand& a, const Cand& b) { return a.val > b.val; });
  seeds.resize(std::min<size_t>(seeds.size(), 12));

  // analytic landmarks of the objective: the eavesdropper null direction
  // (where the narrow high-ratio sliver lives when the eavesdropper is
  // strong) and the full-power destination alignment
  if (hE.norm() > 0.0) {
    const Vector2cd null_dir(std::conj(hE(1)), -std::conj(hE(0)));
    const double a1 = std::abs(null_dir(0)), a2 = std::abs(null_dir(1));
    double amax = std::numeric_limits<double>::infinity();
    if (a1 > 0.0) amax = std::min(amax, r1max / a1);
    if (a2 > 0.0) amax = std::min(amax, r2max / a2);
    if (std::isfinite(amax)) {
      const double d =
          std::arg(null_dir(1)) - std::arg(null_dir(0));
      for (double s : {1.0, 0.75, 0.5, 0.25})
        push_seed(s * amax * a1, s * amax * a2, d);
    }
  }
  if (hD.norm() > 0.0)
    push_seed(r1max, r2max, std::arg(hD(1)) - std::arg(hD(0)));

  // multi-start local polish: coordinate-wise golden section, widening
  // windows across passes
  const double hr1 = r1max / (n_r - 1), hr2 = r2max / (n_r - 1);
  const double hd = kTwoPi / n_phase;
  Cand best{0.0, 0.0, 0.0, ratio_at(0.0, 0.0, 0.0)};
  for (Cand c : seeds) {
    for (int pass = 0; pass < 6; ++pass) {
      const double wr1 = hr1 * (pass < 3 ? 2.0 : 0.5);
      const double wr2 = hr2 * (pass < 3 ? 2.0 : 0.5);
      const double wd = hd * (pass < 3 ? 2.0 : 0.5);
      c.r1 = golden_max([&](double r) { return ratio_at(r, c.r2, c.d); },
                        std::max(0.0, c.r1 - wr1),
                        std::min(r1max, c.r1 + wr1));
      c.r2 = golden_max([&](double r) { return ratio_at(c.r1, r, c.d); },
                        std::max(0.0, c.r2 - wr2),
                        std::min(r2max, c.r2 + wr2));
      c.d = golden_max([&](double d) { return ratio_at(c.r1, c.r2, d); },
                       c.d - wd, c.d + wd);
    }
    c.val = ratio_at(c.r1, c.r2, c.d);
    if (c.val > best.val) best = c;
  }

  BeamformerSolution sol;
  sol.w = Vector2cd(best.r1, std::polar(best.r2, best.d));
  sol.achieved_objective = best.val;
  return sol;
}

}  // namespace vlcsec
