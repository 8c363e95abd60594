#pragma once

#include "skewdirac/discrete.hpp"
#include "skewdirac/quadruple.hpp"

namespace skewdirac {

/// Sigma_{t,k} = propagate_k(flow_gdhm(base, t), k) with transfer values at
/// z = +-i.
struct EvolvedState {
  AdmissibleQuadruple base;
  double t = 0.0;
  int k = 0;
  AdmissibleQuadruple sigma;
  Matrix w_plus_i;
  Matrix w_minus_i;
};

/// Requires strong admissibility and i not in sigma(alpha).
EvolvedState state(const AdmissibleQuadruple& q, double t, int k);

/// Largest blockwise difference between the two construction orders
/// (t-flow then k steps vs k steps then t-flow).
double order_discrepancy(const AdmissibleQuadruple& q, double t, int k);

/// C_k(t), the k-th potential generated by flow_gdhm(q, t).
Matrix gdhm_C(const AdmissibleQuadruple& q, double t, int k);
HPair gdhm_H(const AdmissibleQuadruple& q, double t, int k);

/// G_k = I + (i/z) C_k(t).
Matrix aux_G(const AdmissibleQuadruple& q, double t, int k, Complex z);
/// F_k = -H_k^+(t)/(z + i) - H_k^-(t)/(z - i).
Matrix aux_F(const AdmissibleQuadruple& q, double t, int k, Complex z);

/// W_{Sigma_{t,k}}(-z) (I + (i/z) j)^k exp(-2t (P1/(z+i) + P2/(z-i))).
Matrix y_explicit(const AdmissibleQuadruple& q, double t, int k, Complex z);

/// || i dC_k/dt - (H_{k+1}^- - H_{k+1}^+) C_k + C_k (H_k^- - H_k^+) ||,
/// time derivative by central differences of step h.
double gdhm_residual(const AdmissibleQuadruple& q, double t, int k,
                     double h = 1e-4);

/// || dG_k/dt - F_{k+1} G_k + G_k F_k ||, central differences.
double zcc_residual(const AdmissibleQuadruple& q, double t, int k, Complex z,
                    double h = 1e-4);

/// Weyl function of the t-evolved discrete system,
/// -i theta1^* E1^* S(t)^{-1} (zI + beta(t))^{-1} E2 theta2.
StateSpaceRealization weyl_evolution(const AdmissibleQuadruple& q, double t);

/// v(x, t) = 2 theta1(x,t)^* S(x,t)^{-1} theta2(x,t) for the flow
/// theta1 -> e^{-ix alpha} e^{-it alpha^p} theta1,
/// theta2 -> e^{ix alpha} e^{it alpha^p} theta2, p in {2, 3}.
Matrix vxt(const AdmissibleQuadruple& q, double x, double t, int p);

/// || 2 v_t + i v_xx + 2i v v^* v || (p = 2), central differences of step h
/// in both variables.
double nls_residual(const AdmissibleQuadruple& q, double x, double t,
                    double h = 1e-3);

/// || 4 v_t + v_xxx + 3 (v_x v^* v + v v^* v_x) || (p = 3), central
/// differences of step h; v_xxx uses the four-point stencil.
double mkdv_residual(const AdmissibleQuadruple& q, double x, double t,
                     double h = 2e-3);

}  // namespace skewdirac
