#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mixedorder/density_matrix.hpp"
#include "mixedorder/models.hpp"
#include "mixedorder/pauli.hpp"

namespace mixedorder {

// Charged two-point probe: operator template O placed at sites x and y.
struct CorrelatorRequest {
  Mat2 op = pauli_z();
  int x = 0;
  int y = 1;
};

struct SSBClassification {
  enum class Verdict { unbroken, sw_ssb, fully_broken, inconsistent };
  double fidelity_value = 0;
  double renyi2_value = 0;
  double linear_value = 0;
  double theta_f = 0.1;
  double theta_l = 0.1;
  Verdict verdict = Verdict::unbroken;

  std::string verdict_name() const;
};

// F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)), computed as the nuclear
// norm ||A†B||_1 of rank-revealing factors rho = AA†, sigma = BB†. sigma may
// be any PSD operator of trace <= 1 + 1e-10 (the O rho O† case).
double fidelity(const Mat& rho, const Mat& sigma);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// F(rho, O_x O†_y rho O_y O†_x)
double fidelity_correlator(const DensityMatrix& rho,
                           const CorrelatorRequest& req);

// Same probe over many pairs; the rank-revealing factor of rho is computed
// once and shared, which is the dominant cost for large registers.
std::vector<double> fidelity_correlator_pairs(
    const DensityMatrix& rho, const Mat2& op,
    const std::vector<std::pair<int, int>>& pairs);

// Tr(O_x O†_y rho O_y O†_x rho) / Tr rho²
double renyi2_correlator(const DensityMatrix& rho,
                         const CorrelatorRequest& req);

// |Tr(rho O_x O†_y)|
double linear_correlator(const DensityMatrix& rho,
                         const CorrelatorRequest& req);

// Same three probes for Z at (x, y) on the string-basis decohered state,
// evaluated classically on the endpoint-pattern distribution.
double string_fidelity_correlator(const StringBasisState& s, int x, int y);
double string_renyi2_correlator(const StringBasisState& s, int x, int y);
double string_linear_correlator(const StringBasisState& s, int x, int y);

// (1/2)||rho - sigma||_1
double trace_distance(const Mat& rho, const Mat& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr(rho ln rho - rho ln sigma) in nats; +infinity if supp(rho) is not
// contained in supp(sigma).
double relative_entropy(const Mat& rho, const Mat& sigma);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// (1/(alpha-1)) log2 Tr[(sigma^{(1-alpha)/2alpha} rho
// sigma^{(1-alpha)/2alpha})^alpha], in bits.
double sandwiched_renyi(const Mat& rho, const Mat& sigma, double alpha);

// Unnormalized Tr[(rho^m sigma rho^m)^n] with sigma = O_x O†_y rho O_y O†_x.
double replicated_fidelity(const DensityMatrix& rho,
                           const CorrelatorRequest& req, int m, int n);

// I(A;C|B) = S(AB) + S(BC) - S(B) - S(ABC), nats.
double cmi(const DensityMatrix& rho, const std::set<int>& a,
           const std::set<int>& b, const std::set<int>& c);

SSBClassification classify_ssb(const DensityMatrix& rho, const Mat2& op,
                               const std::vector<std::pair<int, int>>& pairs,
                               double theta_f = 0.1, double theta_l = 0.1);

// |Tr[M (rho~ - rho)]| with rho~ = (1/n) sum_x O_x rho O†_x.
double local_indistinguishability_check(const DensityMatrix& rho,
                                        const Mat2& op, const PauliString& m);

struct DetectabilityBound {
  double lhs = 0;
  double rhs = 0;
};

// lhs = F(rho_+, (1/n) sum_y O_y rho_+ O†_y) with rho_+ = (rho + rho~)/2;
// rhs = (1/n²) sum_{x,y} F(rho, O†_x O_y rho O_x O†_y).
DetectabilityBound detectability_bound(const DensityMatrix& rho,
                                       const Mat2& op);

}  // namespace mixedorder
