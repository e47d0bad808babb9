#pragma once

// Execution selection for the data-parallel kernels. Every kernel has a
// serial reference path and an OpenMP path that must produce identical
// output.

namespace rulemine {

enum class Execution { serial, parallel };

/// Caps the OpenMP team size. 0 restores the runtime default.
void set_thread_count(int threads);

/// Team size the parallel kernels will use.
int thread_count();

}  // namespace rulemine
