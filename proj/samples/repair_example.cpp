// Repairs the nine-type premium example and compares it with the
// replica-surrogate baselines.

#include <iostream>

#include "mechkit/mechkit.hpp"

int main() {
  using mechkit::Scalar;
  const Scalar eps(1, 10);
  const auto f = mechkit::example_better_result(9, eps);

  const auto before = mechkit::analyze(f.instance, f.mechanism);
  std::cout << "input:  epsBIC " << before.eps_bic << ", revenue " << before.revenue
            << ", welfare " << before.welfare << "\n";

  const auto repaired = mechkit::transform_mechanism(f.instance, f.mechanism);
  const auto& rep = repaired.report;
  std::cout << "repair: " << rep.steps.size() << " step(s), revenue " << rep.after.revenue
            << " (loss " << rep.revenue_loss << ", bound " << rep.revenue_loss_bound
            << "), welfare " << rep.after.welfare << "\n";
  std::cout << mechkit::describe(rep.steps);

  mechkit::RSConfig cfg;
  cfg.eta = eps / Scalar(2);  // eps / (sqrt(9) - 1)
  const auto rs = mechkit::rs_transform(f.instance, f.mechanism, cfg);
  const auto bh = mechkit::bei_huang(f.instance, f.mechanism);
  std::cout << "replica-surrogate: revenue " << *rs.revenue << ", welfare " << *rs.welfare << "\n";
  std::cout << "bei-huang:         revenue " << *bh.revenue << ", welfare " << *bh.welfare << "\n";
  return 0;
}
