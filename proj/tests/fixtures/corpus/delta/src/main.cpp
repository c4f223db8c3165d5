#include <iostream>

#include "ring_buffer.h"

int main() {
  RingBuffer<int> window(4);
  for (int sample = 1; sample <= 10; ++sample) {
    window.push(sample * sample);
  }
  long sum = 0;
  while (!window.empty()) sum += window.pop();
  std::cout << "sum of last four squares: " << sum << "\n";
  return 0;
}
