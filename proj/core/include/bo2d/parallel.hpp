#pragma once

namespace bo2d {

/// Caps the worker threads used inside FFTs for grids created afterwards.
/// Values below 1 are treated as 1.
void set_max_threads(int n);
int max_threads() noexcept;

/// Applies the BO2D_THREADS environment variable if set; returns the cap in effect.
int configure_threads_from_env();

}  // namespace bo2d
