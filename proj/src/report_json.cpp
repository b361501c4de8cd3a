#include "acg/report_json.hpp"

namespace acg {

namespace {

ojson subgroup_json(const Subgroup& s) {
  ojson j;
  j["order"] = s.order();
  j["elements"] = std::vector<Elem>(s.elements().begin(), s.elements().end());
  return j;
}

ojson frobenius_json(const FrobeniusData& fd) {
  ojson j;
  j["kernel"] = subgroup_json(fd.kernel);
  j["complement"] = subgroup_json(fd.complement);
  j["kernel_index_in_g"] = fd.kernel_index_in_g;
  return j;
}

ojson constraints_json(const std::vector<ConstraintResult>& cs) {
  ojson arr = ojson::array();
  for (const auto& c : cs) {
    ojson j;
    j["id"] = c.id;
    j["satisfied"] = c.satisfied;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    arr.push_back(std::move(j));
  }
  return arr;
}

ojson claims_json(const std::vector<ClaimCheck>& cs) {
  ojson arr = ojson::array();
  for (const auto& c : cs) {
    ojson j;
    j["id"] = c.id;
    j["holds"] = c.holds;
    arr.push_back(std::move(j));
  }
  return arr;
}

template <class Report>
ojson feasibility_json(const Report& r) {
  ojson j;
  j["tuple"] = ojson::parse(to_json(r.tuple).dump());
  j["feasible"] = r.feasible;
  j["constraints"] = constraints_json(r.constraints);
  j["claims"] = claims_json(r.claims);
  return j;
}

}  // namespace

ojson json_of(const GraphSignature& s) {
  ojson j;
  j["group"] = s.group;
  j["order"] = s.order;
  j["center"] = s.center;
  j["parts"] = s.part_sizes;
  return j;
}

ojson json_of(const CliqueFormulaReport& r) {
  ojson j;
  j["measured"] = r.measured;
  j["center_index"] = r.center_index;
  j["index_sum"] = r.index_sum;
  j["formula"] = r.formula;
  j["equal"] = r.equal;
  if (r.quotient_prime) {
    j["quotient_prime"] = *r.quotient_prime;
    j["congruent_one"] = *r.congruent_one;
  }
  j["holds"] = r.holds();
  return j;
}

ojson json_of(const ACClassification& c) {
  ojson j;
  j["group"] = c.group;
  j["types"] = std::vector<int>(c.types.begin(), c.types.end());
  ojson w = ojson::object();
  if (c.type1) {
    ojson t = subgroup_json(c.type1->normal_abelian);
    t["index"] = c.type1->index;
    w["1"] = std::move(t);
  }
  if (c.type2) w["2"] = frobenius_json(*c.type2);
  if (c.type3) w["3"] = frobenius_json(*c.type3);
  if (c.type4) w["4"] = ojson{{"v", subgroup_json(c.type4->v)}};
  if (c.type5) {
    ojson t;
    t["p"] = c.type5->p;
    t["sylow"] = subgroup_json(c.type5->sylow);
    t["abelian_part"] = subgroup_json(c.type5->abelian_part);
    w["5"] = std::move(t);
  }
  j["witnesses"] = std::move(w);
  ojson pc = ojson::object();
  for (const auto& [type, count] : c.predicted_counts) pc[std::to_string(type)] = count;
  j["predicted_counts"] = std::move(pc);
  j["measured_count"] = c.measured_count;
  return j;
}

ojson json_of(const NilpotentACProfile& p, const std::string& group) {
  ojson j;
  j["group"] = group;
  j["p"] = p.p;
  j["n"] = p.n;
  j["r"] = p.r;
  j["a"] = p.a;
  j["sylow_order"] = p.sylow.order();
  j["abelian_part_order"] = p.abelian_part.order();
  return j;
}

ojson json_of(const PGroupLemmaReport& r) {
  ojson j;
  j["group"] = r.group;
  j["p"] = r.p;
  j["n"] = r.n;
  j["class"] = r.c;
  ojson arr = ojson::array();
  for (const auto& c : r.clauses) {
    ojson cj;
    cj["clause"] = c.clause;
    cj["checks"] = c.checks;
    cj["violations"] = c.violations;
    arr.push_back(std::move(cj));
  }
  j["clauses"] = std::move(arr);
  j["ok"] = r.ok();
  return j;
}

ojson json_of(const Type3Report& r) { return feasibility_json(r); }
ojson json_of(const Type1Report& r) { return feasibility_json(r); }

ojson json_of(const CatalogEntry& e) {
  ojson j;
  j["group"] = e.name;
  j["order"] = e.order;
  j["center"] = e.center_order;
  j["valid"] = e.valid;
  j["abelian"] = e.is_abelian;
  j["ac"] = e.is_ac;
  j["solvable"] = e.is_solvable;
  j["nilpotent"] = e.is_nilpotent;
  j["parts"] = e.signature ? ojson(e.signature->part_sizes) : ojson(nullptr);
  if (e.classification) {
    j["types"] = std::vector<int>(e.classification->types.begin(), e.classification->types.end());
    j["measured_count"] = e.classification->measured_count;
  } else {
    j["types"] = nullptr;
  }
  if (e.profile) {
    j["profile"] = ojson{{"p", e.profile->p}, {"n", e.profile->n}, {"r", e.profile->r}, {"a", e.profile->a}};
  } else {
    j["profile"] = nullptr;
  }
  return j;
}

ojson json_of(const GraphPair& p) {
  ojson j;
  j["g"] = p.g;
  j["h"] = p.h;
  j["parts"] = p.parts;
  j["same_order"] = p.same_order;
  j["verdict"] = to_string(p.verdict);
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

ojson json_of(const TheoremCheck& c) {
  ojson j;
  j["id"] = c.id;
  j["checked"] = c.checked;
  j["violations"] = c.violations;
  j["note"] = c.note;
  return j;
}

ojson json_of(const TheoremReport& r) {
  ojson j;
  j["ok"] = r.ok();
  ojson arr = ojson::array();
  for (const auto& c : r.checks) arr.push_back(json_of(c));
  j["checks"] = std::move(arr);
  return j;
}

}  // namespace acg
