#pragma once

namespace morsedyn::parallel {

/// Global switch between the OpenMP kernels and their serial references.
/// Defaults to on when compiled with OpenMP; the environment variable
/// MORSEDYN_SERIAL=1 forces the serial path.
bool enabled();
void set_enabled(bool on);

int max_threads();

} // namespace morsedyn::parallel
