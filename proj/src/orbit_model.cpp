#include "oflp/orbit_model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace oflp {

unsigned PartialInjection::domain_size() const {
  return static_cast<unsigned>(std::count_if(image.begin(), image.end(), [](unsigned v) { return v != 0; }));
}

bool PartialInjection::is_injective() const {
  std::vector<bool> seen(target_arity + 1, false);
  for (unsigned v : image) {
    if (v == 0) continue;
    if (v > target_arity) return false;
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool PartialInjection::within_arity() const {
  return std::all_of(image.begin(), image.end(), [&](unsigned v) { return v <= target_arity; });
}

PartialInjection PartialInjection::empty(unsigned source_arity, unsigned target_arity) {
  return {target_arity, std::vector<unsigned>(source_arity, 0)};
}

PartialInjection PartialInjection::identity(unsigned arity) {
  PartialInjection p{arity, std::vector<unsigned>(arity)};
  for (unsigned k = 0; k < arity; ++k) p.image[k] = k + 1;
  return p;
}

std::string PartialInjection::to_string() const {
  if (image.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < image.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(image[k]);
  }
  return out;
}

PartialInjection PartialInjection::parse(std::string_view text, unsigned target_arity) {
  PartialInjection p{target_arity, {}};
  if (text == "-") return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad injection entry '" + std::string(part) + "'");
    p.image.push_back(static_cast<unsigned>(std::stoul(std::string(part))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

// ---------------------------------------------------------------------------

void OrbitSystem::set_coefficient(std::size_t row, std::size_t col, PartialInjection inj, const Integer& value) {
  CoefKey key{row, col, std::move(inj)};
  if (value == 0)
    coefficients.erase(key);
  else
    coefficients[std::move(key)] = value;
}

const Integer& OrbitSystem::coefficient(const CoefKey& key) const {
  static const Integer kZero(0);
  auto it = coefficients.find(key);
  return it == coefficients.end() ? kZero : it->second;
}

bool OrbitSystem::is_canonical() const {
  return std::all_of(rows.begin(), rows.end(), [](const RowOrbit& r) { return r.sense == Sense::Geq; }) &&
         std::all_of(cols.begin(), cols.end(), [](const ColOrbit& c) { return c.sign == Sign::Free; });
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class SystemParser {
 public:
  OrbitSystem run(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto toks = tokenize(line);
      if (!toks.empty()) directive(toks);
    }
    if (!rows_seen_) fail(line_no_ + 1, 1, "missing 'rows:' declaration");
    if (!cols_seen_) fail(line_no_ + 1, 1, "missing 'cols:' declaration");
    return std::move(sys_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) const {
    throw ParseError(line, col, msg);
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { fail(line_no_, t.column, msg); }

  void expect_count(const std::vector<Token>& toks, std::size_t n) const {
    if (toks.size() != n)
      fail(toks.size() > n ? toks[n] : toks.back(),
           "'" + toks[0].text + "' expects " + std::to_string(n - 1) + " argument(s), got " +
               std::to_string(toks.size() - 1));
  }

  unsigned parse_unsigned(const Token& t) const {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(t, "expected a nonnegative integer, got '" + t.text + "'");
    if (t.text.size() > 6) fail(t, "value too large: '" + t.text + "'");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Integer parse_int(const Token& t) const {
    try {
      Rational r = parse_rational(t.text);
      if (r.get_den() != 1) fail(t, "expected an integer, got '" + t.text + "'");
      return r.get_num();
    } catch (const std::invalid_argument&) {
      fail(t, "expected an integer, got '" + t.text + "'");
    }
  }

  std::size_t row_index(const Token& t) const {
    if (!rows_seen_) fail(t, "row index used before 'rows:' declaration");
    unsigned i = parse_unsigned(t);
    if (i < 1 || i > sys_.rows.size())
      fail(t, "row index " + t.text + " out of range 1.." + std::to_string(sys_.rows.size()));
    return i - 1;
  }

  std::size_t col_index(const Token& t) const {
    if (!cols_seen_) fail(t, "column index used before 'cols:' declaration");
    unsigned j = parse_unsigned(t);
    if (j < 1 || j > sys_.cols.size())
      fail(t, "column index " + t.text + " out of range 1.." + std::to_string(sys_.cols.size()));
    return j - 1;
  }

  void directive(const std::vector<Token>& toks) {
    std::string head = toks[0].text;
    std::size_t first_arg = 1;
    if (head.size() > 1 && head.back() == ':') head.pop_back();
    if (head == "rows" || head == "cols") {
      bool& seen = head == "rows" ? rows_seen_ : cols_seen_;
      if (seen) fail(toks[0], "duplicate '" + head + ":' declaration");
      seen = true;
      std::vector<unsigned> dims;
      for (std::size_t k = first_arg; k < toks.size(); ++k) {
        if (k == first_arg && toks[k].text == ":") continue;
        dims.push_back(parse_unsigned(toks[k]));
      }
      if (head == "rows")
        for (unsigned d : dims) sys_.rows.push_back({d, Sense::Geq, 0});
      else
        for (unsigned d : dims) sys_.cols.push_back({d, Sign::Free, 0});
      return;
    }
    if (head == "sense") {
      expect_count(toks, 3);
      std::size_t i = row_index(toks[1]);
      if (toks[2].text == "eq")
        sys_.rows[i].sense = Sense::Eq;
      else if (toks[2].text == "geq")
        sys_.rows[i].sense = Sense::Geq;
      else
        fail(toks[2], "sense must be 'eq' or 'geq'");
      return;
    }
    if (head == "sign") {
      expect_count(toks, 3);
      std::size_t j = col_index(toks[1]);
      if (toks[2].text == "nonneg")
        sys_.cols[j].sign = Sign::NonNeg;
      else if (toks[2].text == "free")
        sys_.cols[j].sign = Sign::Free;
      else
        fail(toks[2], "sign must be 'nonneg' or 'free'");
      return;
    }
    if (head == "target" || head == "objective") {
      expect_count(toks, 3);
      bool is_target = head == "target";
      std::size_t idx = is_target ? row_index(toks[1]) : col_index(toks[1]);
      auto& seen = is_target ? targets_seen_ : objectives_seen_;
      if (!seen.insert(idx).second) fail(toks[0], "duplicate '" + head + "' for index " + toks[1].text);
      Integer v = parse_int(toks[2]);
      if (is_target)
        sys_.rows[idx].target = v;
      else
        sys_.cols[idx].objective = v;
      return;
    }
    if (head == "coef") {
      expect_count(toks, 5);
      std::size_t i = row_index(toks[1]);
      std::size_t j = col_index(toks[2]);
      const Token& inj_tok = toks[3];
      PartialInjection inj;
      try {
        inj = PartialInjection::parse(inj_tok.text, sys_.cols[j].dim);
      } catch (const std::invalid_argument& e) {
        fail(inj_tok, e.what());
      }
      if (inj.source_arity() != sys_.rows[i].dim)
        fail(inj_tok, "arity mismatch: injection has " + std::to_string(inj.source_arity()) +
                          " entries but row orbit " + toks[1].text + " has dimension " +
                          std::to_string(sys_.rows[i].dim));
      if (!inj.within_arity())
        fail(inj_tok, "arity mismatch: injection target exceeds column orbit dimension " +
                          std::to_string(sys_.cols[j].dim));
      if (!inj.is_injective()) fail(inj_tok, "non-injective injection '" + inj_tok.text + "'");
      Integer v = parse_int(toks[4]);
      CoefKey key{i, j, inj};
      if (!coef_seen_.insert(key).second) fail(toks[0], "duplicate coefficient key");
      sys_.set_coefficient(i, j, std::move(inj), v);
      return;
    }
    fail(toks[0], "unknown directive '" + toks[0].text + "'");
  }

  OrbitSystem sys_;
  std::size_t line_no_ = 0;
  bool rows_seen_ = false;
  bool cols_seen_ = false;
  std::set<std::size_t> targets_seen_;
  std::set<std::size_t> objectives_seen_;
  std::set<CoefKey> coef_seen_;
};

}  // namespace

OrbitSystem parse_system(std::istream& in) { return SystemParser().run(in); }

OrbitSystem parse_system_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_system(in);
}

OrbitSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_system(in);
}

std::string print_system(const OrbitSystem& sys) {
  std::ostringstream out;
  out << "rows:";
  for (const auto& r : sys.rows) out << ' ' << r.dim;
  out << "\ncols:";
  for (const auto& c : sys.cols) out << ' ' << c.dim;
  out << '\n';
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (sys.rows[i].sense == Sense::Eq) out << "sense " << i + 1 << " eq\n";
  for (std::size_t j = 0; j < sys.cols.size(); ++j)
    if (sys.cols[j].sign == Sign::NonNeg) out << "sign " << j + 1 << " nonneg\n";
  for (const auto& [key, v] : sys.coefficients)
    out << "coef " << key.row + 1 << ' ' << key.col + 1 << ' ' << key.inj.to_string() << ' ' << v.get_str() << '\n';
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (sys.rows[i].target != 0) out << "target " << i + 1 << ' ' << sys.rows[i].target.get_str() << '\n';
  for (std::size_t j = 0; j < sys.cols.size(); ++j)
    if (sys.cols[j].objective != 0) out << "objective " << j + 1 << ' ' << sys.cols[j].objective.get_str() << '\n';
  return out.str();
}

std::vector<std::string> validate(const OrbitSystem& sys) {
  std::vector<std::string> out;
  for (const auto& [key, v] : sys.coefficients) {
    std::string where = "coefficient (" + std::to_string(key.row + 1) + ", " + std::to_string(key.col + 1) + ", " +
                        key.inj.to_string() + ")";
    if (key.row >= sys.rows.size()) {
      out.push_back(where + ": row index out of range");
      continue;
    }
    if (key.col >= sys.cols.size()) {
      out.push_back(where + ": column index out of range");
      continue;
    }
    if (key.inj.source_arity() != sys.rows[key.row].dim)
      out.push_back(where + ": injection source arity " + std::to_string(key.inj.source_arity()) +
                    " != row orbit dimension " + std::to_string(sys.rows[key.row].dim));
    if (key.inj.target_arity != sys.cols[key.col].dim)
      out.push_back(where + ": injection target arity " + std::to_string(key.inj.target_arity) +
                    " != column orbit dimension " + std::to_string(sys.cols[key.col].dim));
    if (!key.inj.within_arity())
      out.push_back(where + ": injection maps outside its target arity");
    else if (!key.inj.is_injective())
      out.push_back(where + ": injection is not injective");
    if (v == 0) out.push_back(where + ": stored coefficient is zero");
  }
  return out;
}

OrbitSystem canonicalize(const OrbitSystem& sys) {
  OrbitSystem out;
  out.cols = sys.cols;
  for (auto& c : out.cols) c.sign = Sign::Free;

  // first[i] is the new index of row i; an Eq row also owns first[i] + 1.
  std::vector<std::size_t> first(sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    first[i] = out.rows.size();
    out.rows.push_back({sys.rows[i].dim, Sense::Geq, sys.rows[i].target});
    if (sys.rows[i].sense == Sense::Eq) out.rows.push_back({sys.rows[i].dim, Sense::Geq, -sys.rows[i].target});
  }
  for (const auto& [key, v] : sys.coefficients) {
    out.set_coefficient(first[key.row], key.col, key.inj, v);
    if (sys.rows[key.row].sense == Sense::Eq) out.set_coefficient(first[key.row] + 1, key.col, key.inj, -v);
  }
  for (std::size_t j = 0; j < sys.cols.size(); ++j) {
    if (sys.cols[j].sign != Sign::NonNeg) continue;
    std::size_t r = out.rows.size();
    out.rows.push_back({sys.cols[j].dim, Sense::Geq, 0});
    out.set_coefficient(r, j, PartialInjection::identity(sys.cols[j].dim), 1);
  }
  return out;
}

unsigned atom_dimension(const OrbitSystem& sys) {
  unsigned d = 0;
  for (const auto& r : sys.rows) d = std::max(d, r.dim);
  for (const auto& c : sys.cols) d = std::max(d, c.dim);
  return d;
}

}  // namespace oflp
