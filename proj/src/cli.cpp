#include "pats/cli.hpp"

#include "pats/repanalysis.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#ifndef PATS_GOLDEN_DIR
#define PATS_GOLDEN_DIR "tests/golden"
#endif
#ifndef PATS_VERSION
#define PATS_VERSION "0.1.0"
#endif

namespace pats::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  json data;        // canonical content; the manifest digest is taken over data.dump()
  json parameters;  // recorded in the manifest
  std::vector<std::string> lines;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int status = kOk;
};

// ---- output ----

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_text(const Result& r, std::ostream& out) {
  for (const auto& l : r.lines) out << l << '\n';
  if (r.columns.empty()) return;
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
  for (const auto& row : r.rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      // the last column is left unpadded so long polynomials do not drag whitespace
      line += c + 1 == row.size() ? row[c] : row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    out << line << '\n';
  };
  emit(r.columns);
  for (const auto& row : r.rows) emit(row);
}

void write_csv(const Result& r, std::ostream& out) {
  if (r.columns.empty()) {
    for (const auto& l : r.lines) out << csv_field(l) << '\n';
    return;
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
    out << '\n';
  };
  emit(r.columns);
  for (const auto& row : r.rows) emit(row);
}

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

// ---- shared option parsing ----

Reduction parse_level(const std::string& s) {
  if (s == "none") return Reduction::None;
  if (s == "p") return Reduction::P;
  if (s == "pq") return Reduction::PQ;
  throw UsageError("unknown reduction level '" + s + "' (none, p, pq)");
}

TableauOrder parse_order(const std::string& s) {
  if (s == "lex") return TableauOrder::RowReadingLex;
  if (s == "reverse") return TableauOrder::ReverseRowReadingLex;
  throw UsageError("unknown tableau order '" + s + "' (lex, reverse)");
}

TernaryMonomial parse_monomial(const std::string& s) {
  try {
    return TernaryMonomial::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Partition parse_partition(const std::string& s, std::optional<int> degree = std::nullopt) {
  Partition p;
  try {
    p = Partition::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (degree && p.size() != *degree) throw UsageError("partition " + s + " is not of " + std::to_string(*degree));
  return p;
}

void check_odd_degree(int n) {
  if (n < 1 || n % 2 == 0 || n > 15) throw UsageError("degree must be odd, between 1 and 15");
}

// Exact arithmetic is the default up to degree 5, F_101 above.
std::optional<std::uint32_t> choose_modulus(std::uint32_t modulus, bool exact, int degree) {
  if (exact) return std::nullopt;
  if (modulus) return modulus;
  if (degree <= 5) return std::nullopt;
  return 101u;
}

std::string field_name(std::optional<std::uint32_t> modulus) {
  return modulus ? "F_" + std::to_string(*modulus) : "Q";
}

json terms_json(const TernaryPolynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"monomial", m.to_string()}, {"coefficient", to_string(c)}});
  return terms;
}

// {"(a,b,c)": 1, ...}
json coefficient_map(const TernaryPolynomial& p) {
  json out = json::object();
  for (const auto& [m, c] : p.terms()) out[m.to_string()] = to_string(c);
  return out;
}

// Consecutive identities with equal term count (and type set) are grouped.
json profile(const IdentitySearch& s, bool detailed) {
  json out = json::array();
  for (const auto& rec : s.identities) {
    json key = {{"terms", rec.term_count()}};
    if (detailed) {
      key["types"] = rec.types(s.expansion.basis);
      key["magnitudes"] = rec.coefficient_magnitudes();
    }
    if (!out.empty()) {
      json last = out.back();
      last.erase("count");
      if (last == key) {
        out.back()["count"] = out.back()["count"].get<int>() + 1;
        continue;
      }
    }
    key["count"] = 1;
    out.push_back(key);
  }
  return out;
}

// ---- subcommands ----

Result cmd_types(int n) {
  check_odd_degree(n);
  Result r;
  r.parameters = {{"degree", n}};
  r.columns = {"kind", "index", "type", "countsymmetry", "monomials"};
  const auto lists = generate_types(n);
  long factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  json data = {{"degree", n}};
  for (const auto& [kind, list] : {std::pair{"CA", &lists.ca}, std::pair{"PA", &lists.pa}}) {
    json items = json::array();
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto& t = (*list)[i];
      const long d = countsymmetry(t);
      items.push_back({{"type", t.to_string()}, {"countsymmetry", d}, {"monomials", factorial / d}});
      r.rows.push_back({kind, std::to_string(i + 1), t.to_string(), std::to_string(d), std::to_string(factorial / d)});
    }
    data[kind == std::string("CA") ? "ca" : "pa"] = items;
  }
  r.data = data;
  return r;
}

Result cmd_monomials(int n, std::string vars, const std::string& level_name) {
  check_odd_degree(n);
  if (vars.empty()) vars = first_letters(n);
  if (static_cast<int>(vars.size()) != n) throw UsageError("--vars must have exactly degree letters");
  const Reduction level = level_name.empty() ? reduction_for_degree(n) : parse_level(level_name);
  const MonomialBasis basis(n, vars, level);
  Result r;
  r.parameters = {{"degree", n}, {"vars", vars}, {"level", to_string(level)}};
  r.columns = {"index", "type", "monomial"};
  json list = json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    list.push_back(basis[i].to_string());
    r.rows.push_back({std::to_string(i + 1), std::to_string(basis.type_of(i) + 1), basis[i].to_string()});
  }
  r.data = {{"degree", n},
            {"vars", vars},
            {"level", to_string(level)},
            {"count", basis.size()},
            {"type_counts", basis.type_counts()},
            {"monomials", list}};
  r.lines.push_back(std::to_string(basis.size()) + " monomials, by type " + join(basis.type_counts(), " + "));
  return r;
}

Result cmd_straighten(const std::string& text, const std::string& level_name) {
  const TernaryMonomial m = parse_monomial(text);
  const Reduction level = level_name.empty() ? Reduction::PQ : parse_level(level_name);
  const SignedMonomial s = straighten(m, level);
  Result r;
  r.parameters = {{"monomial", text}, {"level", to_string(level)}};
  const std::string shown = s.sign == 0 ? "0" : (s.sign < 0 ? "-" : "") + s.monomial.to_string();
  r.data = {{"input", m.to_string()}, {"level", to_string(level)}, {"sign", s.sign}};
  r.data["monomial"] = s.sign == 0 ? json(nullptr) : json(s.monomial.to_string());
  r.lines.push_back(shown);
  return r;
}

Result cmd_expand(const std::string& text) {
  const TernaryMonomial m = parse_monomial(text);
  const DialgebraPolynomial p = expand_pats(m);
  Result r;
  r.parameters = {{"monomial", text}};
  json terms = json::array();
  for (const auto& [w, c] : p) terms.push_back({{"word", w.to_string()}, {"coefficient", to_string(c)}});
  r.data = {{"monomial", m.to_string()}, {"term_count", p.size()}, {"terms", terms}};
  r.lines.push_back(to_string(p));
  return r;
}

Result cmd_identities(int n, std::string vars, std::uint32_t modulus, bool exact, bool show_terms) {
  check_odd_degree(n);
  if (vars.empty()) vars = first_letters(n);
  if (static_cast<int>(vars.size()) != n) throw UsageError("--vars must have exactly degree letters");
  const auto mod = choose_modulus(modulus, exact, n);
  const IdentitySearch s = find_identities(n, vars, mod);
  const MonomialBasis& basis = s.expansion.basis;
  Result r;
  r.parameters = {{"degree", n}, {"vars", vars}, {"field", field_name(mod)}};
  json ids = json::array();
  r.columns = {"index", "terms", "types", "coefficients"};
  if (show_terms) r.columns.push_back("identity");
  for (std::size_t i = 0; i < s.identities.size(); ++i) {
    const auto& rec = s.identities[i];
    ids.push_back({{"index", i + 1},
                   {"term_count", rec.term_count()},
                   {"types", rec.types(basis)},
                   {"magnitudes", rec.coefficient_magnitudes()},
                   {"terms", terms_json(rec.polynomial)}});
    std::vector<std::string> row = {std::to_string(i + 1), std::to_string(rec.term_count()), join(rec.types(basis)),
                                    join(rec.coefficient_magnitudes())};
    if (show_terms) row.push_back(rec.polynomial.to_string());
    r.rows.push_back(std::move(row));
  }
  r.data = {{"degree", n},
            {"vars", vars},
            {"level", to_string(basis.level())},
            {"field", s.field},
            {"monomials", basis.size()},
            {"type_counts", basis.type_counts()},
            {"matrix_rows", s.expansion.row_count()},
            {"rank", s.rank},
            {"nullity", s.nullity()},
            {"identities", ids}};
  r.lines.push_back("degree " + std::to_string(n) + ", variables " + vars + ", over " + s.field);
  r.lines.push_back(std::to_string(basis.size()) + " monomials (" + join(basis.type_counts(), " + ") + "), " +
                    std::to_string(s.expansion.row_count()) + " dialgebra words");
  r.lines.push_back("rank " + std::to_string(s.rank) + ", nullity " + std::to_string(s.nullity()));
  return r;
}

void fill_rank_rows(Result& r, const RankTable& t) {
  const bool lifted = !t.rows.empty() && t.rows.front().symlifrank.has_value();
  r.columns = {"partition", "dimension", "symrank"};
  if (lifted) r.columns.push_back("symlifrank");
  r.columns.insert(r.columns.end(), {"exprank", "newrank"});
  json rows = json::array();
  for (const auto& row : t.rows) {
    json j = {{"partition", row.partition.to_string()},
              {"dimension", row.dimension},
              {"symrank", row.symrank},
              {"exprank", row.exprank},
              {"newrank", row.newrank()}};
    std::vector<std::string> cells = {row.partition.to_string(), std::to_string(row.dimension),
                                      std::to_string(row.symrank)};
    if (lifted) {
      j["symlifrank"] = *row.symlifrank;
      cells.push_back(std::to_string(*row.symlifrank));
    }
    cells.push_back(std::to_string(row.exprank));
    cells.push_back(std::to_string(row.newrank()));
    rows.push_back(j);
    r.rows.push_back(std::move(cells));
  }
  r.data["rows"] = rows;
}

template <class Scalar, class Field>
void write_matrix_csv(const Matrix<Scalar>& m, const Field& field, const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) f << ',';
      if constexpr (std::is_same_v<Field, PrimeField>)
        f << field.lift(m(i, j));
      else
        f << to_string(m(i, j));
    }
    f << '\n';
  }
}

struct RankArgs {
  int degree = 7;
  std::vector<std::string> partitions;
  std::uint32_t modulus = 0;
  bool exact = false;
  std::string order = "lex";
  bool full = false;
  std::string emit_matrix;
  unsigned jobs = 1;
};

Result cmd_ranks(const RankArgs& a) {
  check_odd_degree(a.degree);
  std::vector<Partition> only;
  for (const auto& s : a.partitions) only.push_back(parse_partition(s, a.degree));
  RankOptions o;
  o.modulus = choose_modulus(a.modulus, a.exact, 7);  // over F_101 unless asked otherwise
  o.order = parse_order(a.order);
  o.full_exprank = a.full;
  o.jobs = a.jobs;
  if (!a.emit_matrix.empty()) {
    if (only.size() != 1) throw UsageError("--emit-matrix needs exactly one --partition");
    auto emit = [&](auto field) {
      const Representation rho(only.front(), field, o.order);
      write_matrix_csv(build_X_lambda(rho), field, a.emit_matrix);
    };
    if (o.modulus)
      emit(PrimeField::for_degree(*o.modulus, a.degree));
    else
      emit(Rationals{});
  }
  const RankTable t = rank_table(a.degree, o, only);
  Result r;
  r.parameters = {{"degree", a.degree}, {"partitions", a.partitions}, {"field", t.field}, {"order", a.order}};
  r.data = {{"degree", a.degree}, {"field", t.field}, {"order", a.order}};
  fill_rank_rows(r, t);
  r.data["weighted_newrank"] = t.weighted_newrank();
  r.lines.push_back("degree " + std::to_string(a.degree) + ", over " + t.field);
  if (only.empty())
    r.lines.push_back("sum of newrank * dimension: " + std::to_string(t.weighted_newrank()));
  return r;
}

// ---- degree 9 ----

struct Degree9Args {
  std::vector<std::string> partitions;
  std::uint32_t modulus = 101;
  std::string order = "lex";
  std::string out_dir;
  unsigned jobs = 1;
};

json partition_record(const RankRow& row, std::uint32_t modulus, const std::string& order) {
  return {{"partition", row.partition.to_string()},
          {"modulus", modulus},
          {"order", order},
          {"dimension", row.dimension},
          {"symrank", row.symrank},
          {"symlifrank", *row.symlifrank},
          {"exprank", row.exprank}};
}

RankTable degree9_table(const Degree9Args& a, std::vector<std::string>& notes) {
  if (a.modulus <= 9) throw UsageError("--modulus must be a prime above 9");
  std::vector<Partition> wanted;
  for (const auto& s : a.partitions) wanted.push_back(parse_partition(s, 9));
  if (wanted.empty()) wanted = partitions_of(9);
  RankOptions o;
  o.modulus = a.modulus;
  o.order = parse_order(a.order);
  o.lifted = true;
  o.jobs = a.jobs;

  std::map<Partition, RankRow> done;
  const fs::path dir = a.out_dir;
  auto file_for = [&](const Partition& p) { return dir / ("partition-" + p.to_string() + ".json"); };
  if (!a.out_dir.empty()) {
    fs::create_directories(dir);
    for (const auto& p : wanted) {
      std::ifstream f(file_for(p));
      if (!f) continue;
      json j;
      try {
        f >> j;
      } catch (const json::exception&) {
        continue;  // a partial write from an interrupted run; recompute
      }
      if (j.value("modulus", 0u) != a.modulus || j.value("order", "") != a.order) continue;
      done[p] = RankRow{p, j.at("dimension").get<Index>(), j.at("symrank").get<Index>(), j.at("exprank").get<Index>(),
                        j.at("symlifrank").get<Index>()};
    }
    if (!done.empty()) notes.push_back("resumed " + std::to_string(done.size()) + " partition(s) from " + a.out_dir);
  }
  std::vector<Partition> missing;
  for (const auto& p : wanted)
    if (!done.count(p)) missing.push_back(p);
  if (!missing.empty()) {
    const RankTable fresh = rank_table(9, o, missing);
    for (const auto& row : fresh.rows) {
      done[row.partition] = row;
      if (!a.out_dir.empty()) {
        const fs::path target = file_for(row.partition);
        const fs::path tmp = target.string() + ".tmp";
        {
          std::ofstream f(tmp);
          f << partition_record(row, a.modulus, a.order).dump(2) << '\n';
        }
        fs::rename(tmp, target);
      }
    }
  }
  RankTable t;
  t.degree = 9;
  t.field = "F_" + std::to_string(a.modulus);
  for (const auto& p : partitions_of(9))
    if (done.count(p)) t.rows.push_back(done[p]);
  return t;
}

Result cmd_degree9(const Degree9Args& a) {
  Result r;
  r.parameters = {{"partitions", a.partitions}, {"field", "F_" + std::to_string(a.modulus)}, {"order", a.order}};
  const RankTable t = degree9_table(a, r.lines);
  r.data = {{"degree", 9}, {"field", t.field}, {"order", a.order}};
  fill_rank_rows(r, t);
  bool equal = true, sandwich = true;
  for (const auto& row : t.rows) {
    equal = equal && *row.symlifrank == row.exprank;
    sandwich = sandwich && row.symrank <= *row.symlifrank && *row.symlifrank <= row.exprank;
  }
  r.data["symlifrank_equals_exprank"] = equal;
  r.data["sandwich"] = sandwich;
  r.lines.push_back("degree 9, over " + t.field + ", " + std::to_string(t.rows.size()) + " partition(s)");
  r.lines.push_back(std::string("symrank <= symlifrank <= exprank: ") + (sandwich ? "holds" : "FAILS"));
  r.lines.push_back(std::string("symlifrank = exprank: ") + (equal ? "holds" : "FAILS"));
  if (!equal || !sandwich) r.status = kMismatch;
  return r;
}

// ---- small inspection commands ----

Result cmd_clifton(const std::string& partition, const std::string& permutation, bool normalized,
                   std::uint32_t modulus) {
  const Partition shape = parse_partition(partition);
  Permutation pi;
  try {
    pi = Permutation::parse(permutation);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (pi.degree() != shape.size()) throw UsageError("permutation and partition have different degrees");
  Result r;
  r.parameters = {{"partition", partition}, {"permutation", permutation}, {"normalized", normalized}};
  std::vector<std::vector<std::string>> cells;
  if (!normalized) {
    const IntMatrix m = clifton_raw(shape, pi);
    for (Index i = 0; i < m.rows(); ++i) {
      cells.emplace_back();
      for (Index j = 0; j < m.cols(); ++j) cells.back().push_back(std::to_string(m(i, j)));
    }
  } else if (modulus) {
    const PrimeField f = PrimeField::for_degree(modulus, shape.size());
    const auto m = rep_matrix(shape, pi, f);
    r.parameters["field"] = f.name();
    for (Index i = 0; i < m.rows(); ++i) {
      cells.emplace_back();
      for (Index j = 0; j < m.cols(); ++j) cells.back().push_back(std::to_string(f.lift(m(i, j))));
    }
  } else {
    const auto m = rep_matrix(shape, pi, Rationals{});
    for (Index i = 0; i < m.rows(); ++i) {
      cells.emplace_back();
      for (Index j = 0; j < m.cols(); ++j) cells.back().push_back(to_string(m(i, j)));
    }
  }
  r.data = {{"partition", shape.to_string()},
            {"permutation", pi.to_string()},
            {"normalized", normalized},
            {"matrix", cells}};
  for (const auto& row : cells) r.lines.push_back(join(row, " "));
  return r;
}

Result cmd_tableaux(const std::string& partition, const std::string& order) {
  const Partition shape = parse_partition(partition);
  const auto ts = standard_tableaux(shape, parse_order(order));
  Result r;
  r.parameters = {{"partition", partition}, {"order", order}};
  r.columns = {"index", "tableau", "reading_word"};
  json list = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<int> word = ts[i].reading_word();
    for (int& w : word) ++w;
    list.push_back(ts[i].to_string());
    r.rows.push_back({std::to_string(i + 1), ts[i].to_string(), join(word)});
  }
  r.data = {{"partition", shape.to_string()}, {"order", order}, {"dimension", ts.size()}, {"tableaux", list}};
  return r;
}

// ---- reproduction targets ----

json artifact_table1() {
  ExpansionMatrix e = build_expansion_matrix(3, "abc");
  json words = json::array(), monomials = json::array(), matrix = json::array();
  for (const auto& w : e.rows) words.push_back(w.to_string());
  for (const auto& m : e.basis.monomials()) monomials.push_back(m.to_string());
  const Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic> dense(e.matrix);
  for (Index j = 0; j < dense.cols(); ++j) {
    std::vector<int> row;
    for (Index i = 0; i < dense.rows(); ++i) row.push_back(dense(i, j));
    matrix.push_back(row);
  }
  const IdentitySearch s = find_identities(std::move(e), std::nullopt);
  json basis = json::array();
  for (const auto& rec : s.identities) basis.push_back(coefficient_map(rec.polynomial));
  return {{"words", words}, {"monomials", monomials}, {"transpose", matrix}, {"nullity", s.nullity()}, {"basis", basis}};
}

json artifact_table2() {
  json out = json::object();
  for (int n = 1; n <= 9; n += 2) {
    const auto lists = generate_types(n);
    json ca = json::array(), pa = json::array();
    for (const auto& t : lists.ca) ca.push_back(t.to_string());
    for (const auto& t : lists.pa) pa.push_back(t.to_string());
    out[std::to_string(n)] = {{"ca", ca}, {"pa", pa}};
  }
  return out;
}

json artifact_table4(unsigned jobs) {
  RankOptions o;
  o.jobs = jobs;
  const RankTable t = rank_table(7, o);
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"partition", r.partition.to_string()},
                    {"dimension", r.dimension},
                    {"symrank", r.symrank},
                    {"exprank", r.exprank},
                    {"newrank", r.newrank()}});
  return {{"rows", rows}, {"weighted_newrank", t.weighted_newrank()}};
}

// 1-based position of p (up to sign) among the identities, or 0.
int basis_position(const IdentitySearch& s, const TernaryPolynomial& p, const PrimeField& f) {
  const auto v = coordinates(p, s.expansion.basis, f);
  const IntVector iv = f.integral(std::span<const std::int64_t>(v.data(), static_cast<std::size_t>(v.size())));
  for (std::size_t i = 0; i < s.identities.size(); ++i)
    if (s.identities[i].coefficients == iv || s.identities[i].coefficients == -iv) return static_cast<int>(i + 1);
  return 0;
}

bool in_nullspace(const IdentitySearch& s, const TernaryPolynomial& p, const PrimeField& f) {
  IncrementalEchelon<PrimeField> e(static_cast<Index>(s.expansion.basis.size()), f);
  for (const auto& rec : s.identities) e.insert(coordinates(rec.polynomial, s.expansion.basis, f));
  return e.contains(coordinates(p, s.expansion.basis, f));
}

json printed_record(const IdentitySearch& s, const TernaryPolynomial& p, const PrimeField& f) {
  return {{"terms", p.size()}, {"identity", is_identity(p)}, {"in_nullspace", in_nullspace(s, p, f)}};
}

json artifact_thm64() {
  const PrimeField f(101);
  const IdentitySearch s = find_identities(7, first_letters(7), 101u);
  const TernaryPolynomial R = builtin_identity("R"), S = builtin_identity("S");
  auto named = [&](const TernaryPolynomial& p) {
    const auto v = f.integral(std::span<const std::int64_t>(coordinates(p, s.expansion.basis, f).data(),
                                                             s.expansion.basis.size()));
    std::vector<std::int64_t> mags;
    for (Index j = 0; j < v.size(); ++j)
      if (v(j)) mags.push_back(std::abs(v(j)));
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    return json{{"terms", p.size()},
                {"magnitudes", mags},
                {"identity", is_identity(p)},
                {"orbit_dimension", orbit_dimension(p)},
                {"basis_position", basis_position(s, p, f)}};
  };
  std::vector<TernaryPolynomial> basis;
  for (const auto& rec : s.identities) basis.push_back(rec.polynomial);
  return {{"monomials", s.expansion.basis.size()},
          {"type_counts", s.expansion.basis.type_counts()},
          {"matrix_rows", s.expansion.row_count()},
          {"rank", s.rank},
          {"nullity", s.nullity()},
          {"profile", profile(s, true)},
          {"R", named(R)},
          {"S", named(S)},
          {"orbit_sum_dimension", orbit_span_rank({R, S}, {})},
          {"orbits_span_nullspace", orbit_span_rank({R, S}, basis) == orbit_span_rank({R, S}, {})}};
}

json artifact_nonlinear(const std::string& vars, const std::vector<std::string>& printed, bool detailed) {
  const PrimeField f(101);
  const IdentitySearch s = find_identities(7, vars, 101u);
  json p = json::object();
  for (const auto& name : printed) p[name] = printed_record(s, nonlinear_identity(name), f);
  json out = {{"vars", vars}, {"nullity", s.nullity()}, {"printed", p}};
  if (detailed) {
    out["monomials"] = s.expansion.basis.size();
    out["type_counts"] = s.expansion.basis.type_counts();
    out["matrix_rows"] = s.expansion.row_count();
    out["rank"] = s.rank;
    out["profile"] = profile(s, true);
  } else {
    std::size_t sixty = 0;
    for (const auto& rec : s.identities) sixty += rec.term_count() == 60;
    out["sixty_term_identities"] = sixty;
  }
  return out;
}

json artifact_degree9(unsigned jobs) {
  const auto lists = generate_types(9);
  RankOptions o;
  o.lifted = true;
  o.jobs = jobs;
  const RankTable t = rank_table(9, o);
  json rows = json::array();
  bool equal = true, sandwich = true;
  for (const auto& r : t.rows) {
    rows.push_back({{"partition", r.partition.to_string()},
                    {"dimension", r.dimension},
                    {"symrank", r.symrank},
                    {"symlifrank", *r.symlifrank},
                    {"exprank", r.exprank}});
    equal = equal && *r.symlifrank == r.exprank;
    sandwich = sandwich && r.symrank <= *r.symlifrank && *r.symlifrank <= r.exprank;
  }
  return {{"ca_types", lists.ca.size()},
          {"pa_types", lists.pa.size()},
          {"rows", rows},
          {"symlifrank_equals_exprank", equal},
          {"sandwich", sandwich}};
}

json artifact(const std::string& target, unsigned jobs) {
  if (target == "table1") return artifact_table1();
  if (target == "table2") return artifact_table2();
  if (target == "table4") return artifact_table4(jobs);
  if (target == "thm6.4") return artifact_thm64();
  if (target == "thm7.6") return artifact_nonlinear("aaabcde", {"I31111"}, true);
  if (target == "thm7.7") return artifact_nonlinear("aabbcde", {"I22111.1", "I22111.2"}, false);
  if (target == "thm7.8")
    return artifact_nonlinear("aabcdef", {"I211111.1", "I211111.2", "I211111.3", "I211111.4", "I211111.5"}, false);
  if (target == "degree9") return artifact_degree9(jobs);
  throw UsageError("unknown reproduction target '" + target + "'");
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

Result cmd_reproduce(const std::string& target, const std::string& golden_dir, unsigned jobs) {
  const fs::path path = fs::path(golden_dir) / (target + ".json");
  std::ifstream f(path);
  if (!f) throw UsageError("no golden file " + path.string());
  json golden;
  try {
    f >> golden;
  } catch (const json::exception& e) {
    throw UsageError("unreadable golden file " + path.string() + ": " + e.what());
  }
  const json computed = artifact(target, jobs);
  const json& expected = golden.at("expected");
  const json diff = json::diff(expected, computed);

  Result r;
  r.parameters = {{"target", target}, {"golden", path.string()}};
  r.data = {{"target", target}, {"artifact", computed}, {"match", diff.empty()}, {"differences", diff}};
  if (golden.contains("description")) r.lines.push_back(golden["description"].get<std::string>());

  // the artifact as path/value rows
  r.columns = {"item", "value"};
  const json flat = computed.flatten();
  for (const auto& [k, v] : flat.items()) r.rows.push_back({k, scalar_text(v)});

  if (diff.empty()) {
    r.lines.push_back(target + ": matches " + path.filename().string());
  } else {
    r.status = kMismatch;
    r.lines.push_back(target + ": MISMATCH against " + path.filename().string());
    for (const auto& op : diff) {
      std::string line = "  " + op.at("op").get<std::string>() + " " + op.at("path").get<std::string>();
      if (op.contains("value")) line += ": computed " + op["value"].dump();
      const std::string where = op.at("path").get<std::string>();
      if (op["op"] != "add") {
        try {
          line += ", expected " + expected.at(json::json_pointer(where)).dump();
        } catch (const json::exception&) {
        }
      }
      r.lines.push_back(line);
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> targets = {"table1", "table2", "table4", "thm6.4",
                                                   "thm7.6", "thm7.7", "thm7.8", "degree9"};
  return targets;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream s;
  for (unsigned int i = 0; i < length; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identities of the partially alternating ternary sum in dialgebras", "pats"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text", manifest;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--manifest", manifest, "Write a run manifest (JSON) to this file, or - for stderr");

  int degree = 0;
  std::string vars, level, monomial, order = "lex";
  std::uint32_t modulus = 0;
  bool exact = false, show_terms = false;

  auto* types = app.add_subcommand("types", "Association types of one degree");
  types->add_option("--degree", degree, "Odd degree")->required();

  auto* monomials = app.add_subcommand("monomials", "Inequivalent monomials of one degree");
  monomials->add_option("--degree", degree, "Odd degree")->required();
  monomials->add_option("--vars", vars, "Variable multiset, e.g. aaabcde (default: distinct letters)");
  monomials->add_option("--level", level, "Reduction: none, p or pq (default: by degree)");

  auto* straighten_cmd = app.add_subcommand("straighten", "Straighten a ternary monomial");
  straighten_cmd->add_option("monomial", monomial, "e.g. '((a,c,b),e,d)'")->required();
  straighten_cmd->add_option("--level", level, "Reduction: none, p or pq (default: pq)");

  auto* expand_cmd = app.add_subcommand("expand", "Expand a ternary monomial into dialgebra words");
  expand_cmd->add_option("monomial", monomial, "e.g. '((a,b,c),d,e)'")->required();

  auto* identities = app.add_subcommand("identities", "Nullspace of the expansion matrix");
  identities->add_option("--degree", degree, "Odd degree")->required();
  identities->add_option("--vars", vars, "Variable multiset (default: distinct letters)");
  identities->add_option("--modulus", modulus, "Work over F_p (default: Q up to degree 5, else 101)");
  identities->add_flag("--exact", exact, "Work over Q");
  identities->add_flag("--terms", show_terms, "Show every identity in text and CSV output");

  RankArgs ra;
  auto* ranks = app.add_subcommand("ranks", "symrank and exprank in each partition");
  ranks->add_option("--degree", ra.degree, "Odd degree (default 7)");
  ranks->add_option("--partition", ra.partitions, "Only these partitions, e.g. 421");
  ranks->add_option("--modulus", ra.modulus, "Prime (default 101)");
  ranks->add_flag("--exact", ra.exact, "Work over Q");
  ranks->add_option("--order", ra.order, "Tableau order: lex or reverse");
  ranks->add_flag("--full", ra.full, "Row-reduce the whole of X_lambda for exprank");
  ranks->add_option("--emit-matrix", ra.emit_matrix, "Write X_lambda as CSV (one partition)");
  ranks->add_option("--jobs", ra.jobs, "Partitions computed in parallel")->check(CLI::PositiveNumber);

  Degree9Args da;
  auto* degree9 = app.add_subcommand("degree9", "symrank, symlifrank and exprank in degree 9");
  degree9->add_option("--partition", da.partitions, "Only these partitions, e.g. 531");
  degree9->add_option("--modulus", da.modulus, "Prime (default 101)");
  degree9->add_option("--order", da.order, "Tableau order: lex or reverse");
  degree9->add_option("--out-dir", da.out_dir, "Keep one result file per partition here and reuse them");
  degree9->add_option("--jobs", da.jobs, "Partitions computed in parallel")->check(CLI::PositiveNumber);

  std::string partition, permutation;
  bool normalized = false;
  auto* clifton = app.add_subcommand("clifton", "Clifton matrix R_pi, or rho(pi) with --normalized");
  clifton->add_option("--partition", partition, "e.g. 32")->required();
  clifton->add_option("--permutation", permutation, "One-line notation, e.g. 21345")->required();
  clifton->add_flag("--normalized", normalized, "Print rho(pi) = R_id^-1 R_pi");
  clifton->add_option("--modulus", modulus, "Normalize over F_p instead of Q");

  auto* tableaux = app.add_subcommand("tableaux", "Standard tableaux of a partition");
  tableaux->add_option("--partition", partition, "e.g. 32")->required();
  tableaux->add_option("--order", order, "lex or reverse");

  std::string target, golden_dir = PATS_GOLDEN_DIR;
  unsigned jobs = 1;
  auto* reproduce = app.add_subcommand("reproduce", "Recompute a published result and compare with its golden file");
  reproduce->add_option("target", target, "Result to reproduce")->required()->check(CLI::IsMember(reproduce_targets()));
  reproduce->add_option("--golden-dir", golden_dir, "Directory of golden files");
  reproduce->add_option("--jobs", jobs, "Partitions computed in parallel")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Result result;
  std::string command;
  try {
    if (types->parsed()) {
      command = "types", result = cmd_types(degree);
    } else if (monomials->parsed()) {
      command = "monomials", result = cmd_monomials(degree, vars, level);
    } else if (straighten_cmd->parsed()) {
      command = "straighten", result = cmd_straighten(monomial, level);
    } else if (expand_cmd->parsed()) {
      command = "expand", result = cmd_expand(monomial);
    } else if (identities->parsed()) {
      command = "identities", result = cmd_identities(degree, vars, modulus, exact, show_terms);
    } else if (ranks->parsed()) {
      command = "ranks", result = cmd_ranks(ra);
    } else if (degree9->parsed()) {
      command = "degree9", result = cmd_degree9(da);
    } else if (clifton->parsed()) {
      command = "clifton", result = cmd_clifton(partition, permutation, normalized, modulus);
    } else if (tableaux->parsed()) {
      command = "tableaux", result = cmd_tableaux(partition, order);
    } else if (reproduce->parsed()) {
      command = "reproduce", result = cmd_reproduce(target, golden_dir, jobs);
    }
  } catch (const UsageError& e) {
    err << "pats: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "pats: " << e.what() << '\n';
    return kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (format == "json")
    out << result.data.dump(2) << '\n';
  else if (format == "csv")
    write_csv(result, out);
  else
    write_text(result, out);

  if (!manifest.empty()) {
    const json m = {{"artifact", "pats"},
                    {"version", PATS_VERSION},
                    {"command", command},
                    {"parameters", result.parameters},
                    {"wall_time_seconds", seconds},
                    {"digest", sha256_hex(result.data.dump())}};
    if (manifest == "-") {
      err << m.dump(2) << '\n';
    } else {
      std::ofstream f(manifest);
      if (!f) {
        err << "pats: cannot write manifest " << manifest << '\n';
        return kUsage;
      }
      f << m.dump(2) << '\n';
    }
  }
  return result.status;
}

}  // namespace pats::cli
