#pragma once

#include <fftw3.h>

#include <cstddef>
#include <mutex>

#include "bo2d/spectral_field.hpp"

namespace bo2d::detail {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex();

class FftPlans {
 public:
  FftPlans(std::size_t nx, std::size_t ny);
  ~FftPlans();
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(const double* in, Complex* out) const;
  // Overwrites `in`.
  void inverse(Complex* in, double* out) const;

 private:
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

}  // namespace bo2d::detail
