#pragma once

#include <string_view>

#include "forcing/errors.hpp"
#include "forcing/job.hpp"
#include "forcing/polynomial.hpp"
#include "forcing/ring.hpp"

namespace forcing {

/// Grammar: `Q[vars] | Fp(<p>)[vars] | Z`, optional forcing-variable block
/// `;[T1,...]`. Errors carry the offending position.
RingPtr parse_ring(std::string_view text);

/// Tokens: ring variables, integer (or `a/b` rational) literals, `+ - * ^ ( )`.
/// Implicit multiplication is rejected; the division operator does not exist
/// (only rational literals). parse(serialize(p)) == p on canonical forms.
Polynomial parse_poly(std::string_view text, const RingPtr& ring);

/// Same, with positions offset for embedding inside larger files.
Polynomial parse_poly_at(std::string_view text, const RingPtr& ring,
                         SourcePos origin);

/// Line-oriented `key: value` job files; `#` starts a comment; keys are
/// order-insensitive. Validates everything; no partial JobSpec escapes.
JobSpec parse_job(std::string_view text);

/// Parses `x=1, y=0` style assignments (or `generic`) against a ring.
PointSpec parse_point(std::string_view text, const RingPtr& ring);

}  // namespace forcing
