#ifndef TATECALC_CACHE_HPP
#define TATECALC_CACHE_HPP

#include <string>

#include "tatecalc/fgl.hpp"
#include "tatecalc/tate.hpp"

namespace tatecalc {

// Builders that consult the directory named by TATECALC_CACHE (when set)
// for previously computed exp and pi-inverse series, keyed by preset ring
// and order. Every cache hit is re-validated against the context/model
// invariants; anything stale, corrupt or unreadable is recomputed and
// rewritten. A cache problem never fails the computation.
FGLContext cached_fgl_context(const RingPtr& ring, int order);
TateModel cached_tate_model(const RingPtr& ring, const std::string& variable,
                            int order, bool with_fgl);

} // namespace tatecalc

#endif
