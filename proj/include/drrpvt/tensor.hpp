#pragma once

// Dense row-major tensors. Instance and solution data use [s][s'][t]
// index order throughout, matching the JSON interchange layout.

#include <cstddef>
#include <vector>

namespace drrpvt {

template <class T>
class Tensor2 {
 public:
  Tensor2() = default;
  Tensor2(int n0, int n1, T fill = T{})
      : n0_(n0), n1_(n1), data_(static_cast<size_t>(n0) * n1, fill) {}

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * n1_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * n1_ + j];
  }

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  size_t size() const { return data_.size(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Tensor2& o) const {
    return n0_ == o.n0_ && n1_ == o.n1_ && data_ == o.data_;
  }

 private:
  int n0_ = 0, n1_ = 0;
  std::vector<T> data_;
};

template <class T>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int n0, int n1, int n2, T fill = T{})
      : n0_(n0), n1_(n1), n2_(n2),
        data_(static_cast<size_t>(n0) * n1 * n2, fill) {}

  T& operator()(int i, int j, int k) {
    return data_[(static_cast<size_t>(i) * n1_ + j) * n2_ + k];
  }
  const T& operator()(int i, int j, int k) const {
    return data_[(static_cast<size_t>(i) * n1_ + j) * n2_ + k];
  }

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }
  size_t size() const { return data_.size(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Tensor3& o) const {
    return n0_ == o.n0_ && n1_ == o.n1_ && n2_ == o.n2_ && data_ == o.data_;
  }

 private:
  int n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<T> data_;
};

template <class T>
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int n0, int n1, int n2, int n3, T fill = T{})
      : n0_(n0), n1_(n1), n2_(n2), n3_(n3),
        data_(static_cast<size_t>(n0) * n1 * n2 * n3, fill) {}

  T& operator()(int i, int j, int k, int l) {
    return data_[((static_cast<size_t>(i) * n1_ + j) * n2_ + k) * n3_ + l];
  }
  const T& operator()(int i, int j, int k, int l) const {
    return data_[((static_cast<size_t>(i) * n1_ + j) * n2_ + k) * n3_ + l];
  }

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }
  int dim3() const { return n3_; }
  size_t size() const { return data_.size(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Tensor4& o) const {
    return n0_ == o.n0_ && n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_ &&
           data_ == o.data_;
  }

 private:
  int n0_ = 0, n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<T> data_;
};

}  // namespace drrpvt
