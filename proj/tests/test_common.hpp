#pragma once

#include <string>

#include "fidelium/io.hpp"

#ifndef FIDELIUM_DATA_DIR
#define FIDELIUM_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& file) {
  return std::string(FIDELIUM_DATA_DIR) + "/" + file;
}

inline fidelium::AlgebraHandle load_two() {
  return fidelium::load_algebra_file(data_path("two.json"));
}

inline fidelium::AlgebraHandle load_h3() {
  return fidelium::load_algebra_file(data_path("h3neg.json"));
}

inline fidelium::AlgebraHandle load_diamond() {
  return fidelium::load_algebra_file(data_path("diamond.json"));
}

inline fidelium::AlgebraHandle load_chain4() {
  return fidelium::load_algebra_file(data_path("chain4.json"));
}
