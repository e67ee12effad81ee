#include <gtest/gtest.h>

#include "properties.hpp"

namespace qmoduli::props {

void PrintTo(const PropertyEntry& entry, std::ostream* os) { *os << entry.module << "/" << entry.name; }

namespace {

class Property : public ::testing::TestWithParam<PropertyEntry> {};

TEST_P(Property, Holds) {
  const auto result = GetParam().run(seed);
  EXPECT_GE(result.cases, min_cases);
  EXPECT_EQ(result.failures, 0U) << "first counterexample: " << result.first_failure;
}

std::string param_name(const ::testing::TestParamInfo<PropertyEntry>& info) {
  std::string name = std::string(info.param.module) + "_" + info.param.name;
  for (auto& c : name) {
    if (c == '-') {
      c = '_';
    }
  }
  return name;
}

INSTANTIATE_TEST_SUITE_P(Modules, Property, ::testing::ValuesIn(all_properties()), param_name);

}  // namespace
}  // namespace qmoduli::props
