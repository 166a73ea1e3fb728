#pragma once

#include <cstddef>

namespace petty {

// Every node-parallel kernel exists in a serial form (the reference used by
// tests) and an OpenMP form. Both call the same per-index body, so results
// agree bit for bit.
enum class Exec { serial, parallel };

template <class Body>
void for_each_index(Exec exec, std::size_t count, Body&& body) {
  if (exec == Exec::parallel) {
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

// Process-wide default used when callers do not pass a policy.
Exec default_exec();
void set_default_exec(Exec exec);

}  // namespace petty
