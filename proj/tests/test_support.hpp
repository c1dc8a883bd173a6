#pragma once

#include <gtest/gtest.h>

#include <ostream>
#include <string>

#include "costsearch/exact.hpp"

#ifndef COSTSEARCH_DATA_DIR
#define COSTSEARCH_DATA_DIR "data"
#endif

// gtest cannot stream __int128 on its own.
namespace testing::internal {
template <>
class UniversalPrinter<costsearch::Int> {
 public:
  static void Print(const costsearch::Int& v, std::ostream* os) { *os << costsearch::to_string(v); }
};
}  // namespace testing::internal

inline std::string data_file(const std::string& name) { return std::string(COSTSEARCH_DATA_DIR) + "/" + name; }
