#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "cyops/cyops.hpp"
#include "cyops/report.hpp"

using namespace cyops;

namespace {

struct Source {
  std::string name;
  ThetaOperator op;
};

// corpus name, then file path, then inline expression
Source resolve(const std::string& src) {
  if (std::filesystem::exists(corpus_directory() / (src + ".op"))) return {src, corpus_operator(src)};
  if (std::filesystem::is_regular_file(src)) {
    CorpusEntry e = read_operator_file(src);
    return {e.name, parse_theta_operator(e.expression)};
  }
  return {"expression", parse_theta_operator(src)};
}

std::string series_text(const Series& s) { return s.to_string("z"); }

struct Options {
  std::string command, source, other;
  std::size_t truncation = 50;
  std::size_t depth = 200;
  unsigned long prime_bound = 1000000;
  int ell = -1;
  unsigned power = 2;
  bool json = false;
  bool strict = false;
  bool depth_given = false;
};

int default_ell(long order) { return order == 7 ? 4 : static_cast<int>(order - 1); }

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

Json series_list(const std::vector<Series>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

int run(const Options& o) {
  const bool needs_source = o.command != "corpus";
  if (needs_source && o.source.empty()) throw Error(ErrorKind::InvalidArgument, "command '" + o.command + "' needs a source");
  Source src;
  if (needs_source) src = resolve(o.source);
  const ThetaOperator& L = src.op;
  const int ell = o.ell >= 0 ? o.ell : default_ell(L.order());
  Json doc{{"operator", operator_json(src.name, L)}};
  std::string text;
  bool failed = false;

  if (o.command == "analyze") {
    ReportParams p{o.truncation, o.depth, o.prime_bound, ell};
    Json r = analyze_report(src.name, L, p);
    failed = !r["verdict"]["cy_type"].get<bool>();
    text += src.name + " (order " + std::to_string(L.order()) + ")\n  " + render(L) + "\n";
    const Json& v = r["verdict"];
    for (const char* k : {"P", "M", "N", "Q", "S"}) text += std::string("  (") + k + ") " + (v[k]["pass"].get<bool>() ? "pass" : "fail") + "\n";
    text += "  CY-type: " + std::string(v["cy_type"].get<bool>() ? "yes" : "no") + " (depth " + std::to_string(o.depth) +
            ", prime bound " + std::to_string(o.prime_bound) + ", irreducibility not checked)\n";
    if (!r["galois"].is_null() && r["galois"].contains("classification"))
      text += "  Galois: " + r["galois"]["classification"].get<std::string>() + "\n";
    doc = r;
  } else if (o.command == "dual") {
    const DOperator D = to_d_form(L);
    const ThetaOperator Lv = dual(L).normalized();
    SelfDualSearch sd = find_self_dual_witness(D);
    doc["dual"] = render(Lv);
    doc["self_dual"] = sd.alpha.has_value();
    if (sd.alpha) doc["alpha"] = sd.alpha->to_string();
    else doc["reason"] = sd.reason;
    failed = !sd.alpha;
    text = "dual: " + render(Lv) + "\n" + (sd.alpha ? "alpha: " + sd.alpha->to_string() : "not self-dual: " + sd.reason) + "\n";
  } else if (o.command == "exponents") {
    SingularPoints sp = singular_points(L);
    Json pts = Json::array();
    for (const auto& p : sp.points) {
      Json e{{"point", p.to_string()}};
      text += p.to_string() + ":";
      try {
        LocalStructure ls = local_structure(L, p);
        e["indicial"] = ls.indicial.polynomial.to_string("T");
        Json classes = Json::array();
        for (const auto& c : ls.classes) {
          Json ex = Json::array(), bl = Json::array();
          for (const auto& x : c.exponents) {
            ex.push_back(to_string(x));
            text += " " + to_string(x);
          }
          for (int b : c.block_sizes) bl.push_back(b);
          classes.push_back(Json{{"exponents", ex}, {"block_sizes", bl}});
        }
        e["classes"] = classes;
        text += ls.has_logs() ? "  (logarithmic)\n" : "\n";
      } catch (const Error& err) {
        e["error"] = err.what();
        text += std::string(" ") + err.what() + "\n";
      }
      pts.push_back(e);
    }
    doc["singular_points"] = pts;
    if (sp.residual.degree() > 0) {
      doc["irrational_singular_factor"] = sp.residual.to_string("z");
      text += "other singular points: roots of " + sp.residual.to_string("z") + "\n";
    }
  } else if (o.command == "flag") {
    Flag f = mum_flag(L, o.truncation);
    doc["mum_exponent"] = f.mum_exponent;
    doc["f"] = series_list(f.f);
    for (std::size_t k = 0; k < f.f.size(); ++k) text += "f_" + std::to_string(k) + " = " + series_text(f.f[k]) + "\n";
  } else if (o.command == "qcoord") {
    Series q = q_coordinate(L, o.truncation);
    doc["q"] = to_json(q);
    text = "q = " + series_text(q) + "\n";
  } else if (o.command == "yinv") {
    auto Y = y_invariants(L, o.truncation);
    doc["y_invariants"] = series_list(Y);
    for (std::size_t i = 0; i < Y.size(); ++i) text += "Y_" + std::to_string(i + 1) + " = " + series_text(Y[i]) + "\n";
  } else if (o.command == "lambert") {
    const std::size_t count = o.depth_given ? o.depth : 10;
    auto Y = y_invariants(L, std::max(o.truncation, count + 2));
    Json arr = Json::array();
    for (std::size_t i = 0; i < Y.size(); ++i) {
      LambertExpansion e = lambert_coefficients(Y[i], ell, count);
      Json j = to_json(e);
      j["index"] = i + 1;
      arr.push_back(j);
      text += "Y_" + std::to_string(i + 1) + " (ell = " + std::to_string(ell) + "):";
      for (std::size_t d = 0; d < e.coefficients.size(); ++d) text += (d ? ", " : " ") + to_string(e.coefficients[d]);
      text += "\n";
    }
    doc["lambert"] = arr;
  } else if (o.command == "sympow") {
    DOperator S = sym_power_order2(to_d_form(L), o.power);
    doc["power"] = o.power;
    doc["theta_form"] = render(to_theta_form(S).normalized());
    doc["d_form"] = S.to_string();
    text = render(to_theta_form(S).normalized()) + "\n";
  } else if (o.command == "symroot") {
    SymRoot r = reconstruct_sym_root(L, o.truncation);
    doc["root"] = r.P.to_string();
    doc["root_theta_form"] = render(to_theta_form(r.P).normalized());
    doc["twist"] = r.twist.to_string();
    text = "P = " + r.P.to_string() + "\ntwist = " + r.twist.to_string() + "\n";
  } else if (o.command == "galois") {
    GaloisVerdict g = galois_classify(L, o.truncation);
    doc["galois"] = to_json(g);
    text = g.label() + " (ambient " + g.ambient + ")\n";
    for (const auto& e : g.evidence) text += "  " + e.criterion + ": " + e.result + "\n";
    failed = g.classification == GaloisClass::Undetermined;
  } else if (o.command == "equiv") {
    if (o.other.empty()) throw Error(ErrorKind::InvalidArgument, "equiv needs two sources");
    Source b = resolve(o.other);
    const bool eq = special_normal_form_equal(L, b.op, o.truncation);
    doc["other"] = operator_json(b.name, b.op);
    doc["equivalent"] = eq;
    failed = !eq;
    text = eq ? "true\n" : "false\n";
  } else if (o.command == "corpus") {
    Json arr = Json::array();
    for (const auto& e : corpus_entries()) {
      if (!o.source.empty() && e.name != o.source) continue;
      arr.push_back(Json{{"name", e.name}, {"source", e.source}, {"expression", e.expression}});
      text += e.name + "  " + e.source + "\n";
    }
    if (!o.source.empty() && arr.empty()) throw Error(ErrorKind::InvalidArgument, "unknown corpus operator '" + o.source + "'");
    doc = Json{{"corpus", arr}};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + o.command + "'");
  }
  if (o.command != "analyze" && o.command != "corpus") {
    doc["params"] = Json{{"truncation", o.truncation}, {"depth", o.depth}, {"prime_bound", o.prime_bound}, {"ell", ell}};
    doc["version"] = version;
  }
  emit(o, doc, text);
  return (o.strict && failed) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of Calabi-Yau type differential operators"};
  Options o;
  app.add_option("command", o.command,
                 "analyze | dual | exponents | flag | qcoord | yinv | lambert | sympow | symroot | galois | equiv | corpus")
      ->required()
      ->check(CLI::IsMember({"analyze", "dual", "exponents", "flag", "qcoord", "yinv", "lambert", "sympow", "symroot",
                             "galois", "equiv", "corpus"}));
  app.add_option("source", o.source, "corpus name, operator file, or expression in z, T, D");
  app.add_option("other", o.other, "second source (equiv)");
  app.add_option("--truncation", o.truncation, "series truncation")->check(CLI::PositiveNumber);
  auto* depth = app.add_option("--depth", o.depth, "N-integrality depth; number of Lambert terms for lambert");
  app.add_option("--ell", o.ell, "Lambert weight (default 4 for order 7, else order - 1)");
  app.add_option("--prime-bound", o.prime_bound, "largest prime tried in denominators");
  app.add_option("--power", o.power, "symmetric power for sympow")->check(CLI::PositiveNumber);
  auto* json = app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--text", "text output (default)")->excludes(json);
  app.add_flag("--strict", o.strict, "exit 1 when the checked property fails");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.depth_given = depth->count() > 0;
  try {
    return run(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
