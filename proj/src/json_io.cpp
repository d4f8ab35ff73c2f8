#include "gsds/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gsds {

namespace {

void dump_rec(const nlohmann::json& j, std::ostream& os, int indent,
              int depth) {
  auto pad = [&](int d) {
    for (int i = 0; i < d * indent; ++i) os.put(' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        pad(depth + 1);
        os << nlohmann::json(it.key()).dump() << ": ";
        dump_rec(it.value(), os, indent, depth + 1);
        if (k + 1 < j.size()) os << ",";
        os << "\n";
      }
      pad(depth);
      os << "}";
      break;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        pad(depth + 1);
        dump_rec(j[k], os, indent, depth + 1);
        if (k + 1 < j.size()) os << ",";
        os << "\n";
      }
      pad(depth);
      os << "]";
      break;
    }
    case nlohmann::json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      os << buf;
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string stable_dump(const nlohmann::json& j, int indent) {
  std::ostringstream os;
  dump_rec(j, os, indent, 0);
  os << "\n";
  return os.str();
}

nlohmann::json to_json(const GenericityCheck& c) {
  return {{"name", c.name},
          {"pass", c.pass},
          {"advisory", c.advisory},
          {"note", c.note}};
}

nlohmann::json to_json(const GsdsProblem& p) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& c : p.genericity_log) log.push_back(to_json(c));
  return {{"schema", 1},
          {"curve_x", p.X.poly.to_string()},
          {"curve_y", p.Y.poly.to_string()},
          {"d1", p.d1()},
          {"d2", p.d2()},
          {"quad",
           {{"a", to_string(p.quad.a)},
            {"b", to_string(p.quad.b)},
            {"c", to_string(p.quad.c)},
            {"d", to_string(p.quad.d)}}},
          {"seed", p.seed},
          {"resamples", p.resamples},
          {"genericity_log", log}};
}

nlohmann::json to_json(const ImplicitCurve& c) {
  nlohmann::json terms = nlohmann::json::array();
  int iu = c.P.var_index("u");
  int iv = c.P.var_index("v");
  for (const auto& [e, q] : c.P.terms()) {
    terms.push_back({{"e", {iu >= 0 ? e[iu] : 0, iv >= 0 ? e[iv] : 0}},
                     {"num", q.get_num().get_str()},
                     {"den", q.get_den().get_str()}});
  }
  nlohmann::json inf = nlohmann::json::array();
  for (const auto& p : c.infinity_points) {
    inf.push_back({{"alpha_re", p.alpha.real()},
                   {"alpha_im", p.alpha.imag()},
                   {"beta_re", p.beta.real()},
                   {"beta_im", p.beta.imag()},
                   {"multiplicity", p.multiplicity}});
  }
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : c.provenance.factors) {
    factors.push_back({{"degree", f.degree},
                       {"multiplicity", f.multiplicity},
                       {"vanished_at", f.vanished_at},
                       {"kept", f.kept}});
  }
  return {{"schema", 1},
          {"variables", {"u", "v"}},
          {"degree", c.degree},
          {"terms", terms},
          {"infinity_points", inf},
          {"provenance",
           {{"elimination_order", c.provenance.elimination_order},
            {"deg_r1", c.provenance.deg_r1},
            {"deg_r2", c.provenance.deg_r2},
            {"deg_r3", c.provenance.deg_r3},
            {"samples_used", c.provenance.samples_used},
            {"factors", factors},
            {"notes", c.provenance.notes}}}};
}

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"u_re", p.u.real()},
                   {"u_im", p.u.imag()},
                   {"v_re", p.v.real()},
                   {"v_im", p.v.imag()},
                   {"kind", to_string(p.kind)},
                   {"residual", p.residual},
                   {"is_real", p.is_real}});
  }
  return {{"schema", 1},
          {"points", pts},
          {"n_nodes", r.n_nodes},
          {"n_cusps", r.n_cusps},
          {"n_other", r.n_other},
          {"diagnostics",
           {{"starts_used", r.diag.starts_used},
            {"dedup_merges", r.diag.dedup_merges},
            {"worst_residual", r.diag.worst_residual},
            {"escalations", r.diag.escalations},
            {"count_matched", r.diag.count_matched},
            {"used_exact_bounding", r.diag.used_exact_bounding}}}};
}

nlohmann::json to_json(const InvariantSet& s) {
  return {{"degree", s.degree},   {"cusps", s.cusps},
          {"nodes", s.nodes},     {"genus", s.genus},
          {"chi_c", s.chi_c},     {"chi_cprime", s.chi_cprime}};
}

nlohmann::json to_json(const InvariantReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  }
  return {{"schema", 1},
          {"d1", r.d1},
          {"d2", r.d2},
          {"expected", to_json(r.expected)},
          {"computed",
           {{"degree", r.computed.degree},
            {"cusps", r.computed.cusps},
            {"nodes", r.computed.nodes},
            {"cusps_direct", r.computed.cusps_direct}}},
          {"checks", checks},
          {"notes", r.notes},
          {"pass", r.pass}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << content;
}

}  // namespace gsds
