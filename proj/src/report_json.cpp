#include "looptop/report_json.hpp"

namespace looptop {

namespace {

// Integers travel as JSON numbers; values outside 64 bits are refused.
Json integer_json(const Integer& z) {
  if (!z.fits_slong_p()) throw CapacityError("value " + z.get_str() + " exceeds the 64-bit JSON range; lower the dimension");
  return Json(static_cast<long long>(z.get_si()));
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json integers_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(integer_json(x));
  return out;
}

}  // namespace

Json space_json(const SpaceModel& space) {
  Json j;
  j["kind"] = space_kind(space);
  j["spec"] = format_space(space);
  if (const auto* m = std::get_if<ManifoldModel>(&space)) {
    j["n"] = m->n;
    j["betti"] = m->r;
    j["matrix"] = matrix_json(intersection_matrix(*m));
  } else if (const auto* t = std::get_if<ConnectedSumModel>(&space)) {
    Json factors = Json::array();
    for (const auto& [p, q] : t->factors) factors.push_back(Json::array({p, q}));
    Json signs = Json::array();
    for (int i = 0; i < t->r(); ++i) signs.push_back(t->sign(static_cast<std::size_t>(i)));
    j["dimension"] = t->dimension();
    j["factors"] = std::move(factors);
    j["signs"] = std::move(signs);
  } else if (const auto* x = std::get_if<TwoCellModel>(&space)) {
    j["n"] = x->n;
    j["cells"] = x->r();
    j["form"] = matrix_json(x->form);
  } else {
    const auto& b = std::get<BettiOneModel>(space);
    j["n"] = b.n;
    j["m"] = b.m;
  }
  return j;
}

Json moore_json(const MooreReport& moore) {
  Json j;
  j["verdict"] = to_string(moore.verdict);
  j["justification"] = moore.justification;
  return j;
}

Json report_json(const DecompositionReport& report) {
  Json j;
  j["space"] = space_json(report.space);
  j["max_dimension"] = report.max_dimension;
  j["inverted_primes"] = integers_json(report.inverted_primes);
  Json summands = Json::array();
  for (const auto& s : report.summands) {
    Json e;
    e["sphere_dim"] = s.sphere_dim;
    e["multiplicity"] = integer_json(s.multiplicity);
    e["witnesses"] = s.witnesses;
    summands.push_back(std::move(e));
  }
  j["summands"] = std::move(summands);
  j["classification"] = to_string(report.classification);
  if (report.growth) {
    Json g;
    g["surd"] = Json::array({integer_json(report.growth->a), integer_json(report.growth->b), integer_json(report.growth->c)});
    g["decimal"] = report.growth->decimal(10);
    j["growth_rate"] = std::move(g);
  } else {
    j["growth_rate"] = nullptr;
  }
  j["loop_decomposition"] = report.loop_decomposition;
  j["moore"] = moore_json(report.moore);
  j["notes"] = report.notes;
  return j;
}

Json verification_json(const VerificationReport& report) {
  Json j;
  j["space"] = report.space;
  j["cutoff"] = report.cutoff;
  j["cells"] = report.cells;
  j["allowed_torsion_primes"] = integers_json(report.allowed_torsion_primes);
  Json rows = Json::array();
  for (const auto& d : report.degrees) {
    Json e;
    e["degree"] = d.degree;
    e["expected_rank"] = integer_json(d.expected);
    e["rank"] = integer_json(d.observed.rank);
    e["torsion"] = integers_json(d.observed.torsion);
    e["ok"] = d.ok;
    rows.push_back(std::move(e));
  }
  j["degrees"] = std::move(rows);
  j["passed"] = report.passed();
  j["discrepancies"] = report.discrepancies;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace looptop
