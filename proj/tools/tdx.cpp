// Command-line front end: evaluate, compose and check transducers stored as
// JSON. Exit status 0 means success or that the property holds, 1 that it
// fails, 2 an input error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdx/action.hpp"
#include "tdx/io.hpp"
#include "tdx/mealy.hpp"
#include "tdx/monad.hpp"
#include "tdx/transducer.hpp"

namespace {

using tdx::io::Json;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto i = text.find(sep, start);
    out.push_back(text.substr(start, i - start));
    if (i == std::string::npos) return out;
    start = i + 1;
  }
}

/// "k=v,k2=v2" as a map; an empty text gives an empty map.
std::map<std::string, std::string> parse_assignment(const std::string& text, const char* what) {
  std::map<std::string, std::string> out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw tdx::InputError(std::string(what) + ": expected name=name, got '" + item + "'");
    if (!out.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw tdx::InputError(std::string(what) + ": '" + item.substr(0, eq) + "' assigned twice");
  }
  return out;
}

/// A function between name sets; unassigned names map to themselves.
template <class Tag>
tdx::IndexMap name_map(const std::string& text, const tdx::OrderedNames<Tag>& from, const tdx::OrderedNames<Tag>& to,
                       const char* what) {
  auto m = parse_assignment(text, what);
  for (const auto& [k, v] : m)
    if (!from.contains(k)) throw tdx::InputError(std::string(what) + ": unknown name '" + k + "'");
  tdx::IndexMap out;
  for (const auto& x : from) {
    auto it = m.find(x);
    const auto& y = it == m.end() ? x : it->second;
    auto j = to.find(y);
    if (!j) throw tdx::InputError(std::string(what) + ": '" + x + "' has no image in the target");
    out.push_back(*j);
  }
  return out;
}

void emit(const tdx::Transducer& t, const std::string& out) {
  auto text = tdx::io::dump(tdx::io::to_json(t));
  if (out.empty())
    std::cout << text;
  else
    tdx::io::write_file(out, text);
}

/// Prints a verdict line, or a JSON object with --json.
int verdict(bool holds, bool json, const std::string& what, Json witness = nullptr) {
  if (json) {
    Json j;
    j["property"] = what;
    j["holds"] = holds;
    if (!holds && !witness.is_null()) j["witness"] = std::move(witness);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << what << ": " << (holds ? "holds" : "fails");
    if (!holds && !witness.is_null()) std::cout << " " << witness.dump();
    std::cout << "\n";
  }
  return holds ? kHolds : kFails;
}

struct Options {
  std::string a, b, t, m, out, word, from, to, check, regex_a, regex_b, alphabet, map;
  std::string inputs, outputs, input_map, output_map, target_alphabet;
  std::string f1, g1, u1, f2, g2, u2;
  std::size_t audit = 0, maxlen = 3;
  bool json = false, has_check = false, verify = false;
};

tdx::DoubleCell read_cell(const tdx::Transducer& s, const tdx::Transducer& t, const std::string& f,
                          const std::string& g, const std::string& u) {
  return {s, t, name_map(f, s.input(), t.input(), "input map"), name_map(g, s.output(), t.output(), "output map"),
          name_map(u, s.states(), t.states(), "state map")};
}

Json cell_witness(const tdx::Transducer& s, const tdx::CellViolation& v) {
  return Json{{"input", tdx::format_word(v.input, s.input())},
              {"from", s.states()[v.from]},
              {"to", s.states()[v.to]},
              {"output", tdx::format_word(v.output, s.output())}};
}

Json monad_witness(const tdx::MonadPresentation& p, const tdx::MonadViolation& v) {
  Json j;
  j["axiom"] = v.axiom;
  j["message"] = v.message;
  if (v.letter) j["letter"] = p.t.input()[*v.letter];
  Json st = Json::array();
  for (auto s : v.states) st.push_back(p.t.states()[s]);
  j["states"] = st;
  if (v.input_word) j["input"] = tdx::format_word(*v.input_word, p.t.input());
  if (v.output_word) j["output"] = tdx::format_word(*v.output_word, p.t.output());
  return j;
}

int run_eval(const Options& o) {
  auto t = tdx::io::read_transducer(o.t);
  auto w = tdx::parse_word(o.word, t.input());
  auto m = tdx::eval_word(t, w);
  const auto& st = t.states();
  if (o.has_check) {
    if (o.from.empty() || o.to.empty()) throw tdx::InputError("eval: --check needs --from and --to");
    auto v = tdx::parse_word(o.check, t.output());
    const bool in = tdx::membership(m(st.index_of(o.from), st.index_of(o.to)), v);
    if (o.json)
      std::cout << Json{{"word", o.word}, {"from", o.from}, {"to", o.to}, {"output", o.check}, {"member", in}}.dump()
                << "\n";
    else
      std::cout << (in ? "true" : "false") << "\n";
    return in ? kHolds : kFails;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (o.from.empty() || st[i] == o.from) rows.push_back(i);
    if (o.to.empty() || st[i] == o.to) cols.push_back(i);
  }
  if (!o.from.empty()) (void)st.index_of(o.from);
  if (!o.to.empty()) (void)st.index_of(o.to);
  if (o.json) {
    Json entries = Json::array();
    for (auto p : rows)
      for (auto q : cols) entries.push_back(Json{{"from", st[p]}, {"to", st[q]}, {"lang", m(p, q).to_string()}});
    std::cout << Json{{"word", o.word}, {"entries", entries}}.dump() << "\n";
  } else {
    for (auto p : rows)
      for (auto q : cols) std::cout << st[p] << " " << st[q] << " " << m(p, q).to_string() << "\n";
  }
  return kHolds;
}

int run_language_check(const Options& o, bool equality) {
  tdx::Alphabet alpha(split(o.alphabet, ','));
  auto l = tdx::RegularLanguage::parse(o.regex_a, alpha);
  auto r = tdx::RegularLanguage::parse(o.regex_b, alpha);
  auto w = tdx::inclusion_witness(l, r);
  if (equality && !w) w = tdx::inclusion_witness(r, l);
  Json witness = nullptr;
  if (w) witness = tdx::format_word(*w, alpha);
  return verdict(!w, o.json, equality ? "equal" : "included", witness);
}

int run_check2cell(const Options& o) {
  auto s = tdx::io::read_transducer(o.a);
  auto t = tdx::io::read_transducer(o.b);
  tdx::TwoCell c{s, t, name_map(o.map, s.states(), t.states(), "state map")};
  auto v = tdx::two_cell_violation(c);
  if (!v && o.audit > 0) v = tdx::audit_two_cell(c, o.audit);
  return verdict(!v, o.json, "two-cell", v ? cell_witness(s, *v) : Json(nullptr));
}

int run_checkmonad(const Options& o) {
  auto p = tdx::io::monad_from_json(tdx::io::parse(tdx::io::read_file(o.m)));
  auto r = tdx::check_monad(p, o.audit > 0 ? std::optional<std::size_t>(o.audit) : std::nullopt);
  if (o.json) {
    Json j{{"property", "monad"}, {"holds", r.holds()}, {"monoid", r.monoid}, {"unit", r.unit}, {"mult", r.mult}};
    if (r.audit) j["audit"] = *r.audit;
    if (r.violation) j["witness"] = monad_witness(p, *r.violation);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "monoid: " << (r.monoid ? "holds" : "fails") << "\n";
    std::cout << "unit: " << (r.unit ? "holds" : "fails") << "\n";
    std::cout << "mult: " << (r.mult ? "holds" : "fails") << "\n";
    if (r.audit) std::cout << "audit: " << (*r.audit ? "holds" : "fails") << "\n";
    if (r.violation) std::cout << "witness: " << monad_witness(p, *r.violation).dump() << "\n";
    std::cout << "monad: " << (r.holds() ? "holds" : "fails") << "\n";
  }
  return r.holds() ? kHolds : kFails;
}

int run_tabcheck(const Options& o) {
  auto t = tdx::io::read_transducer(o.t);
  const bool has = tdx::has_tabulator(t);
  Json info = nullptr;
  if (has) {
    auto tab = tdx::tabulator_truncation(t, o.maxlen);
    info = Json{{"objects", tab.category.object_count()}, {"morphisms", tab.category.morphism_count()}};
  }
  if (o.json) {
    Json j{{"property", "tabulator"}, {"holds", has}, {"states", t.states().size()}};
    if (has) j["truncation"] = info;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "tabulator: " << (has ? "holds" : "fails") << "\n";
    if (has)
      std::cout << "objects: " << info["objects"] << "\nmorphisms: " << info["morphisms"] << "\n";
    else
      std::cout << "states: " << t.states().size() << "\n";
  }
  return has ? kHolds : kFails;
}

int run_companion(const Options& o, bool is_companion) {
  tdx::Alphabet a(split(o.alphabet, ',')), b(split(o.target_alphabet, ','));
  auto f = name_map(o.map, a, b, "map");
  auto cells = is_companion ? tdx::companion_cells(a, f, b) : tdx::conjoint_cells(a, f, b);
  emit(cells.proarrow, o.out);
  if (o.verify) {
    const bool ok = tdx::check_sandwich(cells, a, f, b, is_companion);
    (o.out.empty() ? std::cerr : std::cout) << "sandwich: " << (ok ? "holds" : "fails") << "\n";
    return ok ? kHolds : kFails;
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transducers as matrices over regular languages"};
  app.require_subcommand(1);
  Options o;

  auto transducer_pair = [&](CLI::App* c) {
    c->add_option("-a", o.a, "first transducer (JSON)")->required()->check(CLI::ExistingFile);
    c->add_option("-b", o.b, "second transducer (JSON)")->required()->check(CLI::ExistingFile);
    c->add_option("-o", o.out, "output file (default: standard output)");
  };
  auto one_transducer = [&](CLI::App* c) {
    c->add_option("-t", o.t, "transducer (JSON)")->required()->check(CLI::ExistingFile);
  };
  auto cell_pair = [&](CLI::App* c) {
    transducer_pair(c);
    c->add_option("--f1", o.f1, "first cell, input map (name=name,...)");
    c->add_option("--g1", o.g1, "first cell, output map");
    c->add_option("--u1", o.u1, "first cell, state map");
    c->add_option("--f2", o.f2, "second cell, input map");
    c->add_option("--g2", o.g2, "second cell, output map");
    c->add_option("--u2", o.u2, "second cell, state map");
  };

  std::map<std::string, std::function<int()>> actions;

  auto* eval = app.add_subcommand("eval", "evaluate a transducer on an input word");
  one_transducer(eval);
  eval->add_option("-w", o.word, "comma-separated input word; empty for the empty word")->required();
  eval->add_option("--from", o.from, "row state");
  eval->add_option("--to", o.to, "column state");
  eval->add_option("--check", o.check, "comma-separated output word to test for membership");
  eval->add_flag("--json", o.json);
  actions["eval"] = [&] {
    o.has_check = eval->count("--check") > 0;
    return run_eval(o);
  };

  auto* comp = app.add_subcommand("compose", "composite of -a then -b");
  transducer_pair(comp);
  actions["compose"] = [&] {
    emit(tdx::compose(tdx::io::read_transducer(o.a), tdx::io::read_transducer(o.b)), o.out);
    return kHolds;
  };

  auto* tens = app.add_subcommand("tensor", "tensor product");
  transducer_pair(tens);
  actions["tensor"] = [&] {
    emit(tdx::tensor(tdx::io::read_transducer(o.a), tdx::io::read_transducer(o.b)), o.out);
    return kHolds;
  };

  auto* prod = app.add_subcommand("product", "apex of the double product");
  transducer_pair(prod);
  actions["product"] = [&] {
    emit(tdx::double_product(tdx::io::read_transducer(o.a), tdx::io::read_transducer(o.b)).apex, o.out);
    return kHolds;
  };

  auto* coprod = app.add_subcommand("coproduct", "apex of the double coproduct");
  transducer_pair(coprod);
  actions["coproduct"] = [&] {
    emit(tdx::double_coproduct(tdx::io::read_transducer(o.a), tdx::io::read_transducer(o.b)).apex, o.out);
    return kHolds;
  };

  auto* reidx = app.add_subcommand("reindex", "pull back along the input map and push along the output map");
  one_transducer(reidx);
  reidx->add_option("--inputs", o.inputs, "new input alphabet (comma-separated)")->required();
  reidx->add_option("--input-map", o.input_map, "new input symbol = old input symbol, ...");
  reidx->add_option("--outputs", o.outputs, "new output alphabet (comma-separated)")->required();
  reidx->add_option("--output-map", o.output_map, "old output symbol = new output symbol, ...");
  reidx->add_option("-o", o.out, "output file (default: standard output)");
  actions["reindex"] = [&] {
    auto t = tdx::io::read_transducer(o.t);
    tdx::Alphabet c(split(o.inputs, ',')), d(split(o.outputs, ','));
    emit(tdx::reindex(t, c, name_map(o.input_map, c, t.input(), "input map"), d,
                      name_map(o.output_map, t.output(), d, "output map")),
         o.out);
    return kHolds;
  };

  auto* eq = app.add_subcommand("equalize", "apex of the equalizer of two parallel cells from -a to -b");
  cell_pair(eq);
  actions["equalize"] = [&] {
    auto s = tdx::io::read_transducer(o.a), t = tdx::io::read_transducer(o.b);
    emit(tdx::double_equalizer(read_cell(s, t, o.f1, o.g1, o.u1), read_cell(s, t, o.f2, o.g2, o.u2)).apex, o.out);
    return kHolds;
  };

  auto* coeq = app.add_subcommand("coequalize", "apex of the coequalizer of two parallel cells from -a to -b");
  cell_pair(coeq);
  actions["coequalize"] = [&] {
    auto s = tdx::io::read_transducer(o.a), t = tdx::io::read_transducer(o.b);
    emit(tdx::double_coequalizer(read_cell(s, t, o.f1, o.g1, o.u1), read_cell(s, t, o.f2, o.g2, o.u2)).apex, o.out);
    return kHolds;
  };

  auto* coll = app.add_subcommand("collapse", "collapse all states into one");
  one_transducer(coll);
  coll->add_option("-o", o.out, "output file (default: standard output)");
  actions["collapse"] = [&] {
    emit(tdx::collapse_states(tdx::io::read_transducer(o.t)), o.out);
    return kHolds;
  };

  for (const char* name : {"companion", "conjoint"}) {
    auto* c = app.add_subcommand(name, std::string(name) + " of a function between alphabets");
    c->add_option("--alphabet", o.alphabet, "domain alphabet (comma-separated)")->required();
    c->add_option("--target", o.target_alphabet, "codomain alphabet (comma-separated)")->required();
    c->add_option("--map", o.map, "the function, name=name,...");
    c->add_option("-o", o.out, "output file (default: standard output)");
    c->add_flag("--verify", o.verify, "check the sandwich identities");
    const bool is_companion = std::string(name) == "companion";
    actions[name] = [&o, is_companion] { return run_companion(o, is_companion); };
  }

  for (const char* name : {"eq", "include"}) {
    auto* c = app.add_subcommand(name, std::string(name) == "eq" ? "language equality" : "language inclusion -a in -b");
    c->add_option("-a", o.regex_a, "first regex")->required();
    c->add_option("-b", o.regex_b, "second regex")->required();
    c->add_option("--alphabet", o.alphabet, "symbols (comma-separated)")->required();
    c->add_flag("--json", o.json);
    const bool equality = std::string(name) == "eq";
    actions[name] = [&o, equality] { return run_language_check(o, equality); };
  }

  auto* c2 = app.add_subcommand("check2cell", "validity of a state map from -a to -b as a 2-cell");
  c2->add_option("-a", o.a, "source transducer (JSON)")->required()->check(CLI::ExistingFile);
  c2->add_option("-b", o.b, "target transducer (JSON)")->required()->check(CLI::ExistingFile);
  c2->add_option("--map", o.map, "state map, name=name,...");
  c2->add_option("--audit", o.audit, "also check eval_word up to this input length");
  c2->add_flag("--json", o.json);
  actions["check2cell"] = [&] { return run_check2cell(o); };

  auto* cm = app.add_subcommand("checkmonad", "check a monad presentation");
  cm->add_option("-m", o.m, "monad presentation (JSON)")->required()->check(CLI::ExistingFile);
  cm->add_option("--audit", o.audit, "also check eval_word up to this input length");
  cm->add_flag("--json", o.json);
  actions["checkmonad"] = [&] { return run_checkmonad(o); };

  auto* m2t = app.add_subcommand("mealy2tdx", "transducer of a Mealy machine");
  m2t->add_option("-m", o.m, "Mealy machine (JSON)")->required()->check(CLI::ExistingFile);
  m2t->add_option("-o", o.out, "output file (default: standard output)");
  actions["mealy2tdx"] = [&] {
    emit(tdx::to_transducer(tdx::io::mealy_from_json(tdx::io::parse(tdx::io::read_file(o.m)))), o.out);
    return kHolds;
  };

  auto* dot = app.add_subcommand("dot", "dynamics graph in DOT");
  one_transducer(dot);
  actions["dot"] = [&] {
    std::cout << tdx::dynamics_graph(tdx::io::read_transducer(o.t));
    return kHolds;
  };

  auto* tab = app.add_subcommand("tabcheck", "tabulator obstruction and bounded truncation");
  one_transducer(tab);
  tab->add_option("--maxlen", o.maxlen, "output word bound for the truncation");
  tab->add_flag("--json", o.json);
  actions["tabcheck"] = [&] { return run_tabcheck(o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    return actions.at(app.get_subcommands().front()->get_name())();
  } catch (const tdx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
