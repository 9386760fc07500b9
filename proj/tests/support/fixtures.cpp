#include "fixtures.hpp"

namespace stopwright::testing {

FilteredSpace e1() {
  const std::vector<TreeNode> nodes{
      {"root", std::nullopt, std::nullopt},
      {"A", "root", std::nullopt},
      {"B", "root", std::nullopt},
      {"w1", "A", q("1/4")},
      {"w2", "A", q("1/4")},
      {"w3", "B", q("1/4")},
      {"w4", "B", q("1/4")},
  };
  return FilteredSpace::from_tree(nodes);
}

FilteredSpace singleton() {
  const std::vector<TreeNode> nodes{
      {"root", std::nullopt, std::nullopt},
      {"w", "root", Rational(1)},
  };
  return FilteredSpace::from_tree(nodes);
}

RandomizedStoppingTime r1() {
  return {{{q("1/2"), q("1/4")}, {q("1/2"), q("0"), q("1/4"), q("3/4")}},
          {q("0"), q("1/2"), q("1/2"), q("0")}};
}

BehaviorStoppingTime b1() {
  return {{{q("1/2"), q("1/4")}, {q("1"), q("0"), q("1/3"), q("1")}}};
}

MixedStoppingTime m1() {
  const Time inf = Time::never();
  const Time one = Time::at(1);
  const Time two = Time::at(2);
  return {{q("0"), q("1/4"), q("1/2"), q("1")},
          {PureStoppingTime{{one, one, one, one}},
           PureStoppingTime{{one, one, two, two}},
           PureStoppingTime{{two, inf, inf, two}}}};
}

AdaptedProcess process(std::vector<std::vector<const char*>> levels,
                       std::vector<const char*> infinity) {
  AdaptedProcess x;
  for (const auto& level : levels) {
    BlockValues v;
    for (const char* s : level) v.push_back(q(s));
    x.values.push_back(std::move(v));
  }
  for (const char* s : infinity) x.infinity.push_back(q(s));
  return x;
}

StoppingProblem stop_at_two_problem() {
  return {process({{"0", "0"}, {"1", "1", "1", "1"}}, {"0", "0", "0", "0"})};
}

StoppingGame singleton_zero_sum(const char* ss, const char* sc, const char* cs,
                                const char* cc) {
  StoppingGame g;
  g.payoff(Player::kOne, Coalition::kBoth) = process({{ss}}, {cc});
  g.payoff(Player::kOne, Coalition::kFirst) = process({{sc}}, {"0"});
  g.payoff(Player::kOne, Coalition::kSecond) = process({{cs}}, {"0"});
  for (Coalition c : {Coalition::kFirst, Coalition::kSecond, Coalition::kBoth}) {
    const AdaptedProcess& x = g.payoff(Player::kOne, c);
    AdaptedProcess y = x;
    for (auto& level : y.values)
      for (auto& v : level) v = -v;
    for (auto& v : y.infinity) v = -v;
    g.payoff(Player::kTwo, c) = y;
  }
  return g;
}

std::string data_path(const std::string& name) {
  return std::string(STOPWRIGHT_TEST_DATA) + "/" + name;
}

}  // namespace stopwright::testing
