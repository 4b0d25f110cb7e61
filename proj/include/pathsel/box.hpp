#pragma once

#include <memory>
#include <utility>

namespace pathsel {

// Immutable shared node with value equality. Lets recursive AST types use
// defaulted comparisons while sharing subtrees between copies.
template <typename T>
class Box {
 public:
  Box(T value)  // NOLINT(google-explicit-constructor)
      : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

}  // namespace pathsel
