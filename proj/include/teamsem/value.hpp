// Interned value tokens.
//
// Team cells hold opaque tokens (strings). We intern them into small ids so
// rows compare and hash cheaply. The canonical token order sorts integer
// tokens numerically ahead of everything else, then falls back to plain
// string comparison; this keeps emitted teams stable regardless of the order
// in which tokens were first seen.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace teamsem {

using Value = std::uint32_t;

Value intern_value(const std::string& token);
const std::string& value_token(Value v);

// Canonical order on tokens (not on the numeric ids).
bool value_less(Value a, Value b);

struct ValueLess {
  bool operator()(Value a, Value b) const { return value_less(a, b); }
};

bool row_less(const std::vector<Value>& a, const std::vector<Value>& b);

}  // namespace teamsem
