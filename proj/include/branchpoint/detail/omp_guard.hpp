#pragma once

#include <exception>

namespace branchpoint::detail {

// Exceptions must not escape an OpenMP region; loops capture the first one
// here and rethrow after the region ends.
class ExceptionSlot {
 public:
  void capture() noexcept {
#pragma omp critical(branchpoint_exception_slot)
    {
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::exception_ptr ptr_;
};

}  // namespace branchpoint::detail
