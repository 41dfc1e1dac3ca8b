#include "paradiff/cutoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace paradiff {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNode = {
    0.09501250983763744018531934, 0.28160355077925891323046050,
    0.45801677765722738634241944, 0.61787624440264374844667176,
    0.75540440835500303389510119, 0.86563120238783174388046790,
    0.94457502307323257607798842, 0.98940093499164993259615417};
constexpr std::array<double, 8> kGlWeight = {
    0.18945061045506849628539672, 0.18260341504492358886676366,
    0.16915651939500253818931208, 0.14959598881657673208150173,
    0.12462897125553387205247628, 0.09515851168249278480992510,
    0.06225352393864789286284384, 0.02715245941175409485178057};

double bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

double gl16(double a, double b) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += kGlWeight[i] * (bump(mid - half * kGlNode[i]) + bump(mid + half * kGlNode[i]));
  return acc * half;
}

constexpr int kPanels = 64;

// integral of bump over [0, s] on a fixed 64-panel grid plus a partial panel
double bump_integral(double s) {
  if (s <= 0.0) return 0.0;
  if (s > 1.0) s = 1.0;
  double acc = 0.0;
  int full = static_cast<int>(s * kPanels);
  if (full > kPanels) full = kPanels;
  for (int p = 0; p < full; ++p)
    acc += gl16(static_cast<double>(p) / kPanels, static_cast<double>(p + 1) / kPanels);
  double a = static_cast<double>(full) / kPanels;
  if (s > a) acc += gl16(a, s);
  return acc;
}

double normalizer() {
  static const double z = bump_integral(1.0);
  return z;
}

}  // namespace

double CutoffProfile::operator()(double t) const {
  if (t <= kLower) return 1.0;
  if (t >= kUpper) return 0.0;
  double s = (t - kLower) / (kUpper - kLower);
  double v = 1.0 - bump_integral(s) / normalizer();
  return std::clamp(v, 0.0, 1.0);
}

double CutoffProfile::deriv(double t) const {
  if (t <= kLower || t >= kUpper) return 0.0;
  double s = (t - kLower) / (kUpper - kLower);
  return -bump(s) / normalizer() / (kUpper - kLower);
}

double CutoffProfile::deriv2(double t) const {
  if (t <= kLower || t >= kUpper) return 0.0;
  double s = (t - kLower) / (kUpper - kLower);
  double u = s * (1.0 - s);
  double dbump = bump(s) * (1.0 - 2.0 * s) / (u * u);
  return -dbump / normalizer() / ((kUpper - kLower) * (kUpper - kLower));
}

}  // namespace paradiff
