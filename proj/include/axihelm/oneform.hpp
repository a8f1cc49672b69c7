#pragma once

#include "axihelm/expr.hpp"

namespace axihelm {

/// One-form a dr + b dz on the (r, z) half-plane; the carrier for the
/// nonlocal variables Q and F. Closed iff a_z = b_r.
struct OneForm {
  Expr a;  ///< dr component
  Expr b;  ///< dz component
};

}  // namespace axihelm
