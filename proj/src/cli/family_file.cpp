#include "edgeguard/cli/family_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace edgeguard::cli {
namespace {

using nlohmann::json;

class Reader {
 public:
  [[noreturn]] static void fail(const std::string& at, const std::string& msg) { throw FileError(at, msg); }

  static double number(const json& v, const std::string& at) {
    if (!v.is_number()) fail(at, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(at, "number is not finite");
    return x;
  }

  static const json& array(const json& v, const std::string& at, std::optional<std::size_t> size = std::nullopt) {
    if (!v.is_array()) fail(at, "expected an array");
    if (size && v.size() != *size) fail(at, "expected " + std::to_string(*size) + " elements, found " + std::to_string(v.size()));
    return v;
  }

  static Polynomial polynomial(const json& v, const std::string& at) {
    std::vector<double> c;
    for (std::size_t k = 0; k < array(v, at).size(); ++k) c.push_back(number(v[k], at + "/" + std::to_string(k)));
    return Polynomial(std::move(c));
  }

  static Bounds bounds(const json& v, const std::string& at) {
    if (v.is_number()) {
      const double x = number(v, at);
      return {x, x};
    }
    if (!v.is_array() || v.size() != 2) fail(at, "expected a number or a [lo, hi] pair");
    const Bounds b{number(v[0], at + "/0"), number(v[1], at + "/1")};
    if (b.lower > b.upper) fail(at, "lower bound exceeds upper bound");
    return b;
  }

  static IntervalPolynomial interval(const json& v, const std::string& at) {
    std::vector<Bounds> b;
    for (std::size_t k = 0; k < array(v, at).size(); ++k) b.push_back(bounds(v[k], at + "/" + std::to_string(k)));
    return IntervalPolynomial(std::move(b));
  }

  template <class T, class F>
  static SquareMatrix<T> matrix(const json& v, std::size_t n, const std::string& at, F&& entry) {
    SquareMatrix<T> m(n);
    array(v, at, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string row_at = at + "/" + std::to_string(i);
      array(v[i], row_at, n);
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(v[i][j], row_at + "/" + std::to_string(j));
    }
    return m;
  }

  static EntryScale scale_entry(const json& v, const std::string& at) {
    if (v.is_null()) return std::nullopt;
    std::vector<CoefficientScale> out;
    for (std::size_t k = 0; k < array(v, at).size(); ++k) {
      const std::string el = at + "/" + std::to_string(k);
      array(v[k], el, 2);
      const CoefficientScale cs{number(v[k][0], el + "/0"), number(v[k][1], el + "/1")};
      if (cs.spread < 0.0) fail(el + "/1", "spread must be non-negative");
      out.push_back(cs);
    }
    return out;
  }

  static void only_keys(const json& v, const std::string& at, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : v.items()) {
      if (!allowed.contains(key)) fail(at + "/" + key, "unknown key");
    }
  }

  static const json& member(const json& v, const std::string& at, const std::string& key) {
    if (!v.contains(key)) fail(at.empty() ? "/" : at, "missing key \"" + key + "\"");
    return v[key];
  }
};

std::string number_text(double x) {
  if (x == 0.0) return "0";
  if (std::trunc(x) == x && std::abs(x) < 1e15) return std::to_string(static_cast<long long>(x));
  return json(x).dump();
}

std::string bounds_text(const Bounds& b) {
  if (b.is_point()) return number_text(b.lower);
  return "[" + number_text(b.lower) + ", " + number_text(b.upper) + "]";
}

template <class T, class F>
void write_matrix(std::ostringstream& os, const SquareMatrix<T>& m, const std::string& indent, F&& entry) {
  os << "[\n";
  for (std::size_t i = 0; i < m.order(); ++i) {
    os << indent << "  [";
    for (std::size_t j = 0; j < m.order(); ++j) os << (j ? ", " : "") << entry(m(i, j));
    os << "]" << (i + 1 < m.order() ? "," : "") << "\n";
  }
  os << indent << "]";
}

std::string poly_text(const Polynomial& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) s += (k ? ", " : "") + number_text(p.coeffs()[k]);
  return s + "]";
}

std::string interval_text(const IntervalPolynomial& ip) {
  std::string s = "[";
  for (std::size_t k = 0; k < ip.bounds().size(); ++k) s += (k ? ", " : "") + bounds_text(ip.bounds()[k]);
  return s + "]";
}

std::string scale_text(const EntryScale& e) {
  if (!e) return "null";
  std::string s = "[";
  for (std::size_t k = 0; k < e->size(); ++k) {
    s += (k ? ", [" : "[") + number_text((*e)[k].center) + ", " + number_text((*e)[k].spread) + "]";
  }
  return s + "]";
}

}  // namespace

FileError::FileError(std::string location, const std::string& message)
    : std::runtime_error(location + ": " + message), location_(std::move(location)) {}

FamilyFile parse_family_file(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileError("byte " + std::to_string(e.byte), e.what());
  }
  if (!root.is_object()) Reader::fail("/", "expected an object");
  Reader::only_keys(root, "", {"n", "n_deg", "A", "C", "B", "D", "scale"});

  const json& jn = Reader::member(root, "", "n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) Reader::fail("/n", "expected a positive integer");
  const auto n = static_cast<std::size_t>(jn.get<long long>());
  const json& jdeg = Reader::member(root, "", "n_deg");
  if (!jdeg.is_number_integer() || jdeg.get<long long>() < 0) Reader::fail("/n_deg", "expected a non-negative integer");

  FamilyFile file;
  UncertainFamily& f = file.family;
  f.n_deg = static_cast<int>(jdeg.get<long long>());
  f.a = Reader::matrix<Polynomial>(Reader::member(root, "", "A"), n, "/A", Reader::polynomial);
  f.c = Reader::matrix<Polynomial>(Reader::member(root, "", "C"), n, "/C", Reader::polynomial);
  f.b = Reader::matrix<IntervalPolynomial>(Reader::member(root, "", "B"), n, "/B", Reader::interval);
  f.d = Reader::matrix<IntervalPolynomial>(Reader::member(root, "", "D"), n, "/D", Reader::interval);
  for (const char* tag : {"B", "D"}) {
    const auto& m = tag[0] == 'B' ? f.b : f.d;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j).highest_power() > f.n_deg) {
          Reader::fail("/" + std::string(tag) + "/" + std::to_string(i) + "/" + std::to_string(j),
                       "entry degree exceeds n_deg");
        }
      }
    }
  }

  if (root.contains("scale")) {
    const json& js = root["scale"];
    if (!js.is_object()) Reader::fail("/scale", "expected an object");
    Reader::only_keys(js, "/scale", {"epsilon", "B", "D"});
    ScaledFamily sf;
    sf.base = f;
    sf.b_scale = Reader::matrix<EntryScale>(Reader::member(js, "/scale", "B"), n, "/scale/B", Reader::scale_entry);
    sf.d_scale = Reader::matrix<EntryScale>(Reader::member(js, "/scale", "D"), n, "/scale/D", Reader::scale_entry);
    for (const char* tag : {"B", "D"}) {
      const auto& m = tag[0] == 'B' ? sf.b_scale : sf.d_scale;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (m(i, j) && static_cast<int>(m(i, j)->size()) > f.n_deg + 1) {
            Reader::fail("/scale/" + std::string(tag) + "/" + std::to_string(i) + "/" + std::to_string(j),
                         "scale entry exceeds n_deg");
          }
        }
      }
    }
    if (js.contains("epsilon")) file.epsilon = Reader::number(js["epsilon"], "/scale/epsilon");
    file.scaled = std::move(sf);
  }
  return file;
}

FamilyFile read_family_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family_file(ss.str());
}

std::string emit_family_file(const FamilyFile& file) {
  const UncertainFamily& f = file.family;
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << f.order() << ",\n";
  os << "  \"n_deg\": " << f.n_deg << ",\n";
  os << "  \"A\": ";
  write_matrix(os, f.a, "  ", poly_text);
  os << ",\n  \"C\": ";
  write_matrix(os, f.c, "  ", poly_text);
  os << ",\n  \"B\": ";
  write_matrix(os, f.b, "  ", interval_text);
  os << ",\n  \"D\": ";
  write_matrix(os, f.d, "  ", interval_text);
  if (file.scaled) {
    os << ",\n  \"scale\": {\n";
    if (file.epsilon) os << "    \"epsilon\": " << number_text(*file.epsilon) << ",\n";
    os << "    \"B\": ";
    write_matrix(os, file.scaled->b_scale, "    ", scale_text);
    os << ",\n    \"D\": ";
    write_matrix(os, file.scaled->d_scale, "    ", scale_text);
    os << "\n  }";
  }
  os << "\n}\n";
  return os.str();
}

IntervalPolynomial parse_interval_polynomial(const std::string& text) {
  json v;
  try {
    v = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileError("byte " + std::to_string(e.byte), e.what());
  }
  return Reader::interval(v, "");
}

}  // namespace edgeguard::cli
