#ifndef ZDFLP_TEST_HELPERS_HPP
#define ZDFLP_TEST_HELPERS_HPP

#include <string>

#include "zdflp/instance.hpp"

namespace zdflp_test {

// n departments active over every period, generous 20x20 facility, areas 4
// with side windows [1, 4]. Flows form a chain d1-d2-...-dn with unit weight.
inline zdflp::Instance make_uniform_instance(int n, int periods, int zones,
                                             bool chain_flows = true) {
  zdflp::Instance inst;
  inst.facility = {20.0, 20.0};
  inst.periods = periods;
  inst.zones.count = zones;
  for (int i = 0; i < n; ++i) {
    zdflp::Department d;
    d.id = "d" + std::to_string(i + 1);
    for (int t = 0; t < periods; ++t)
      d.periods[t] = {4.0, {1.0, 1.0}, {4.0, 4.0}};
    inst.departments.push_back(std::move(d));
  }
  if (chain_flows)
    for (int t = 0; t < periods; ++t)
      for (int i = 0; i + 1 < n; ++i)
        inst.flows.push_back({"d" + std::to_string(i + 1), "d" + std::to_string(i + 2), t,
                              1.0, 1.0});
  return inst;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(ZDFLP_INSTANCE_DIR) + "/tiny/" + name;
}

}  // namespace zdflp_test

#endif
