#pragma once

#include "gq/universe.hpp"
#include "oracle.hpp"

inline oracle::Mask to_mask(const gq::ProcessSet& s) {
  oracle::Mask m;
  s.for_each([&](gq::ProcessId p) { m.set(static_cast<std::size_t>(p)); });
  return m;
}

inline gq::ProcessSet from_mask(const oracle::Mask& m, int n) {
  gq::ProcessSet s(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p)
    if (m.test(static_cast<std::size_t>(p))) s.insert(p);
  return s;
}
