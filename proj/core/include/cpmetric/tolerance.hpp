#pragma once

#include <string_view>

namespace cpmetric {

/// Numerical tolerances shared by all modules.
///
/// `construction` guards input validation (Hermiticity, finiteness),
/// `residual` bounds decomposition residuals relative to the operand scale,
/// `psd_clip` is the most negative eigenvalue silently clipped to zero.
struct ToleranceProfile {
  double construction = 1e-12;
  double residual = 1e-10;
  double psd_clip = 1e-10;
  double state = 1e-10;        // density matrix trace / hermiticity / positivity
  double channel = 1e-9;       // Choi positivity and unitality
  double certification = 1e-6; // optimizer certified gap accepted by default
  double clamp_diagnostic = 1e-8;

  static ToleranceProfile default_profile() { return {}; }
  static ToleranceProfile strict_profile();
};

/// Process-wide profile. Set once at startup (CLI reads CPMETRIC_TOL_PROFILE);
/// library code only reads it.
const ToleranceProfile& tolerances();
void set_tolerance_profile(const ToleranceProfile& profile);

/// "default" or "strict"; throws InvariantError on anything else.
ToleranceProfile tolerance_profile_by_name(std::string_view name);

}  // namespace cpmetric
