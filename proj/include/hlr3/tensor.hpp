#ifndef HLR3_TENSOR_HPP
#define HLR3_TENSOR_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hlr3/linalg.hpp"

namespace hlr3 {

/// Dense multi-index array over Rat, row-major in the index order given by shape.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<Rat> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
    std::size_t total = 1;
    for (std::size_t n : shape) total *= n;
    data.resize(total);
  }

  [[nodiscard]] std::size_t offset(const std::vector<std::size_t>& idx) const {
    if (idx.size() != shape.size()) throw std::invalid_argument("tensor index arity mismatch");
    std::size_t off = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= shape[k]) throw std::out_of_range("tensor index out of range");
      off = off * shape[k] + idx[k];
    }
    return off;
  }

  Rat& at(const std::vector<std::size_t>& idx) { return data[offset(idx)]; }
  [[nodiscard]] const Rat& at(const std::vector<std::size_t>& idx) const {
    return data[offset(idx)];
  }

  [[nodiscard]] bool operator==(const Tensor& other) const = default;

  [[nodiscard]] bool is_zero() const {
    for (const Rat& x : data) {
      if (x != 0) return false;
    }
    return true;
  }
};

/// Calls fn with every index tuple of the given shape in lexicographic order.
inline void for_each_index(const std::vector<std::size_t>& shape,
                           const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t n : shape) {
    if (n == 0) return;
  }
  std::vector<std::size_t> idx(shape.size(), 0);
  while (true) {
    fn(idx);
    std::size_t k = shape.size();
    while (k > 0) {
      --k;
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (shape.empty()) return;
  }
}

}  // namespace hlr3

#endif
