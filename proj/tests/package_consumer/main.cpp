#include <iostream>

#include "cymod/cmforms.hpp"

int main() {
  const auto a = cymod::ap(cymod::hecke_spec("h8"), 5);
  std::cout << "a_5(h8) = " << a << '\n';
  return a == -6 ? 0 : 1;
}
