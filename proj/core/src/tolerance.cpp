#include "cpmetric/tolerance.hpp"

#include <string>

#include "cpmetric/error.hpp"

namespace cpmetric {

namespace {
ToleranceProfile& mutable_profile() {
  static ToleranceProfile profile;
  return profile;
}
}  // namespace

ToleranceProfile ToleranceProfile::strict_profile() {
  ToleranceProfile p;
  p.construction = 1e-13;
  p.residual = 1e-11;
  p.psd_clip = 1e-11;
  p.state = 1e-11;
  p.channel = 1e-10;
  p.certification = 1e-7;
  p.clamp_diagnostic = 1e-9;
  return p;
}

const ToleranceProfile& tolerances() { return mutable_profile(); }

void set_tolerance_profile(const ToleranceProfile& profile) { mutable_profile() = profile; }

ToleranceProfile tolerance_profile_by_name(std::string_view name) {
  if (name == "default" || name.empty()) return ToleranceProfile::default_profile();
  if (name == "strict") return ToleranceProfile::strict_profile();
  throw InvariantError("unknown tolerance profile '" + std::string(name) +
                       "' (expected default|strict)");
}

}  // namespace cpmetric
