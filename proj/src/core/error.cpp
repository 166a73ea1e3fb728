#include "petty/core/error.hpp"

#include "petty/core/exec.hpp"

namespace petty {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::unsupported_dimension: return "unsupported dimension";
    case Errc::non_finite: return "non-finite value";
    case Errc::no_sign_change: return "no sign change";
    case Errc::out_of_range: return "out of range";
    case Errc::invalid_body: return "invalid body";
    case Errc::degenerate_normal: return "degenerate normal";
    case Errc::grid_mismatch: return "grid mismatch";
    case Errc::bracket_failure: return "bracket failure";
    case Errc::body_too_large: return "body too large";
    case Errc::outside_domain: return "outside domain";
    case Errc::infeasible: return "infeasible parameters";
    case Errc::io: return "i/o error";
  }
  return "error";
}

namespace {
Exec g_default_exec = Exec::parallel;
}

Exec default_exec() { return g_default_exec; }
void set_default_exec(Exec exec) { g_default_exec = exec; }

}  // namespace petty
