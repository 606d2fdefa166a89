#pragma once

// Text grammar for the command line.
//   domain:  ball:n | disc | bidisc | polydisc:n | I:p,q | II:m | III:m | IV:m | prod(spec;spec;...)
//   complex: 0.3 | -2i | 1+0.5i | 1e-3-2e-1i | i
//   point:   comma list of complex numbers (chart coordinates), diag(c,...) for matrix kinds,
//            or a full row-major matrix for Type II/III
//   chain:   steps separated by ';', applied left to right:
//            id | scale:c | square | transvection(a...) | inverse(a...) | linear(row-major n*n)

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "jordan/automorphisms.hpp"

namespace jordan {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

/// Splits on `sep` at parenthesis depth 0.
inline std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
  out.push_back(cur);
  return out;
}

inline double parse_real(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not a number: '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not an integer: '" + s + "'");
  return v;
}

/// Returns true and the argument text if s is name(...) or name:...
inline bool match_call(const std::string& s, std::string_view name, std::string& args) {
  if (s.rfind(name, 0) != 0) return false;
  const std::string rest = s.substr(name.size());
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
    args = rest.substr(1, rest.size() - 2);
    return true;
  }
  if (!rest.empty() && rest.front() == ':') {
    args = rest.substr(1);
    return true;
  }
  return false;
}

}  // namespace detail

inline Complex parse_complex(std::string_view text) {
  const std::string s = detail::strip(text);
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i' && s.back() != 'I') return detail::parse_real(s);
  const std::string body = s.substr(0, s.size() - 1);
  // the imaginary part starts at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 0;) {
    if ((body[k] == '+' || body[k] == '-') && !(k > 0 && (body[k - 1] == 'e' || body[k - 1] == 'E'))) {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos || cut == 0) return {0.0, detail::parse_real(body)};
  return {detail::parse_real(body.substr(0, cut)), detail::parse_real(body.substr(cut))};
}

inline std::vector<Complex> parse_complex_list(std::string_view text) {
  const std::string s = detail::strip(text);
  if (s.empty()) return {};
  std::vector<Complex> out;
  for (const auto& tok : detail::split_top(s, ',')) out.push_back(parse_complex(tok));
  return out;
}

inline TripleSystem parse_system(std::string_view text) {
  const std::string s = detail::strip(text);
  std::string args;
  if (s == "disc") return TripleSystem::disc();
  if (s == "bidisc") return TripleSystem::polydisc(2);
  try {
    if (detail::match_call(s, "prod", args)) {
      std::vector<TripleSystem> fs;
      for (const auto& part : detail::split_top(args, ';')) fs.push_back(parse_system(part));
      return TripleSystem::product(fs);
    }
    if (detail::match_call(s, "ball", args)) return TripleSystem::ball(detail::parse_int(args));
    if (detail::match_call(s, "polydisc", args)) return TripleSystem::polydisc(detail::parse_int(args));
    if (detail::match_call(s, "III", args)) return TripleSystem::type_iii(detail::parse_int(args));
    if (detail::match_call(s, "II", args)) return TripleSystem::type_ii(detail::parse_int(args));
    if (detail::match_call(s, "IV", args)) return TripleSystem::type_iv(detail::parse_int(args));
    if (detail::match_call(s, "I", args)) {
      const auto pq = detail::split_top(args, ',');
      if (pq.size() != 2) throw ParseError("I:p,q needs two integers");
      return TripleSystem::type_i(detail::parse_int(pq[0]), detail::parse_int(pq[1]));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad domain '") + s + "': " + e.what());
  }
  throw ParseError("unknown domain '" + s + "'");
}

inline Domain parse_domain(std::string_view text) { return make_domain(parse_system(text)); }

inline Vector parse_point(const TripleSystem& T, std::string_view text) {
  const std::string s = detail::strip(text);
  std::string args;
  if (detail::match_call(s, "diag", args)) {
    if (!T.is_matrix_kind()) throw ParseError("diag(...) needs a matrix domain");
    const auto d = parse_complex_list(args);
    const int k = std::min(T.rows(), T.cols());
    if (static_cast<int>(d.size()) > k) throw ParseError("diag(...) has too many entries");
    Matrix M = Matrix::Zero(T.rows(), T.cols());
    if (T.kind() == Kind::TypeII) {
      // block form: entry j sits at (2j, 2j+1)
      if (static_cast<int>(d.size()) > T.rows() / 2) throw ParseError("diag(...) has too many entries");
      for (std::size_t j = 0; j < d.size(); ++j) {
        M(2 * j, 2 * j + 1) = d[j];
        M(2 * j + 1, 2 * j) = -d[j];
      }
    } else {
      for (std::size_t j = 0; j < d.size(); ++j) M(j, j) = d[j];
    }
    return from_matrix(T, M);
  }
  const auto vals = parse_complex_list(s);
  const int n = T.dim();
  if (static_cast<int>(vals.size()) == n) return Eigen::Map<const Vector>(vals.data(), n);
  if (T.is_matrix_kind() && static_cast<int>(vals.size()) == T.rows() * T.cols()) {
    Matrix M(T.rows(), T.cols());
    for (int i = 0; i < T.rows(); ++i)
      for (int j = 0; j < T.cols(); ++j) M(i, j) = vals[i * T.cols() + j];
    return from_matrix(T, M);
  }
  throw ParseError("point has " + std::to_string(vals.size()) + " entries, domain " + T.tag() + " needs " +
                   std::to_string(n));
}

/// Chain spec over D; transvection and inverse steps use D's automorphisms.
inline MapChain parse_chain(const Domain& D, std::string_view text) {
  const std::string s = detail::strip(text);
  if (s.empty()) throw ParseError("empty chain spec");
  const int n = D.dim();
  MapChain chain;
  for (const auto& step : detail::split_top(s, ';')) {
    std::string args;
    if (step == "id" || step == "identity") continue;
    if (step == "square") {
      chain.then_custom(coordinate_square(n));
    } else if (detail::match_call(step, "scale", args)) {
      chain.then_linear(parse_complex(args) * LinearOperator::Identity(n, n));
    } else if (detail::match_call(step, "transvection", args) || detail::match_call(step, "inverse", args)) {
      const Vector a = parse_point(D.system, args);
      try {
        const Transvection g(D, a);
        if (step.rfind("inverse", 0) == 0) chain.then_inverse(g);
        else chain.then(g);
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad transvection '") + step + "': " + e.what());
      }
    } else if (detail::match_call(step, "linear", args)) {
      const auto vals = parse_complex_list(args);
      if (static_cast<int>(vals.size()) != n * n) throw ParseError("linear(...) needs n*n entries");
      LinearOperator L(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L(i, j) = vals[i * n + j];
      chain.then_linear(L);
    } else {
      throw ParseError("unknown chain step '" + step + "'");
    }
  }
  return chain;
}

}  // namespace jordan
