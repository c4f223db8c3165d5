#pragma once

#include <cstddef>
#include <vector>

// Fixed-capacity FIFO that overwrites the oldest element when full.
template <typename T>
class RingBuffer {
public:
  explicit RingBuffer(std::size_t capacity) : data_(capacity) {}

  void push(const T& value) {
    data_[(head_ + size_) % data_.size()] = value;
    if (size_ < data_.size()) {
      ++size_;
    } else {
      head_ = (head_ + 1) % data_.size();
    }
  }

  T pop() {
    T value = data_[head_];
    head_ = (head_ + 1) % data_.size();
    --size_;
    return value;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

private:
  std::vector<T> data_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};
