#include "looptop/space_model.hpp"

#include <charconv>
#include <stdexcept>

namespace looptop {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '"' || s.front() == '\'')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '"' || s.back() == '\'')) s.remove_suffix(1);
  return s;
}

long long parse_ll(std::string_view s, const char* what) {
  s = trim(s);
  long long value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument(std::string("invalid integer for ") + what + ": '" + std::string(s) + "'");
  return value;
}

int parse_int(std::string_view s, const char* what) {
  const long long v = parse_ll(s, what);
  if (v < -1000000 || v > 1000000) throw std::invalid_argument(std::string(what) + " out of range");
  return static_cast<int>(v);
}

void require_parity(const IntMatrix& m, int n, const char* what) {
  if (!m.square()) throw std::invalid_argument(std::string(what) + " must be square");
  if (n % 2 == 0 && !m.is_symmetric())
    throw std::invalid_argument(std::string(what) + " must be symmetric for even n");
  if (n % 2 == 1 && !m.is_skew())
    throw std::invalid_argument(std::string(what) + " must be skew-symmetric with zero diagonal for odd n");
}

}  // namespace

BettiOneModel make_betti_one(int n, long long m) {
  BettiOneModel b{n, m};
  const long long modulus = n == 4 ? 12 : n == 8 ? 120 : 0;
  if (modulus != 0) b.m = ((m % modulus) + modulus) % modulus;
  if (n == 2) b.m = 0;
  return b;
}

IntMatrix default_intersection_matrix(int n, int r) {
  if (r < 1) throw std::invalid_argument("Betti number must be >= 1");
  IntMatrix g(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  if (n % 2 == 1) {
    if (r % 2 != 0) throw std::invalid_argument("odd n needs an even Betti number (skew unimodular form)");
    for (int i = 0; i + 1 < r; i += 2) {
      g(i, i + 1) = 1;
      g(i + 1, i) = -1;
    }
  } else {
    int i = 0;
    for (; i + 1 < r; i += 2) {
      g(i, i + 1) = 1;
      g(i + 1, i) = 1;
    }
    if (i < r) g(i, i) = 1;
  }
  return g;
}

IntMatrix intersection_matrix(const ManifoldModel& m) {
  return m.matrix ? *m.matrix : default_intersection_matrix(m.n, m.r);
}

void validate(const SpaceModel& space) {
  std::visit(
      overloaded{
          [](const ManifoldModel& m) {
            if (m.n < 2) throw std::invalid_argument("manifold: n must be >= 2");
            if (m.r < 1) throw std::invalid_argument("manifold: Betti number must be >= 1");
            if (m.r == 1 && m.n != 2 && m.n != 4 && m.n != 8)
              throw std::invalid_argument("manifold: Betti number 1 needs a Hopf invariant one class, so n in {2,4,8}");
            if (m.n % 2 == 1 && m.r % 2 != 0)
              throw std::invalid_argument("manifold: odd n forces a skew unimodular form, so r must be even");
            if (m.matrix) {
              if (static_cast<int>(m.matrix->rows()) != m.r)
                throw std::invalid_argument("manifold: matrix size does not match the Betti number");
              require_parity(*m.matrix, m.n, "manifold intersection matrix");
              const Integer det = determinant(*m.matrix);
              if (det != 1 && det != -1)
                throw std::invalid_argument("manifold: intersection matrix must be unimodular (det = +-1)");
            }
          },
          [](const ConnectedSumModel& t) {
            if (t.factors.empty()) throw std::invalid_argument("connected sum: at least one factor required");
            const int n = t.dimension();
            for (const auto& [p, q] : t.factors) {
              if (p < 2 || q < 2) throw std::invalid_argument("connected sum: sphere dimensions must be >= 2");
              if (p + q != n) throw std::invalid_argument("connected sum: all factors must have the same dimension");
            }
            if (!t.signs.empty()) {
              if (t.signs.size() != t.factors.size())
                throw std::invalid_argument("connected sum: one sign per factor required");
              for (int s : t.signs)
                if (s != 1 && s != -1) throw std::invalid_argument("connected sum: signs must be +1 or -1");
            }
          },
          [](const TwoCellModel& x) {
            if (x.n < 2) throw std::invalid_argument("cw: n must be >= 2");
            if (x.form.rows() < 1) throw std::invalid_argument("cw: at least one n-cell required");
            require_parity(x.form, x.n, "cw form");
          },
          [](const BettiOneModel& b) {
            if (b.n != 2 && b.n != 4 && b.n != 8) throw std::invalid_argument("betti-one: n must be 2, 4 or 8");
            const long long modulus = b.n == 4 ? 12 : b.n == 8 ? 120 : 1;
            if (b.m < 0 || b.m >= modulus) throw std::invalid_argument("betti-one: m not reduced");
          },
      },
      space);
}

SpaceModel parse_space(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("space spec needs a family prefix: '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  SpaceModel space;
  if (kind == "manifold") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2 && parts.size() != 3) throw std::invalid_argument("expected manifold:n:r[:matrix]");
    ManifoldModel m{parse_int(parts[0], "n"), parse_int(parts[1], "r"), std::nullopt};
    if (parts.size() == 3) m.matrix = parse_int_matrix(std::string(trim(parts[2])));
    space = m;
  } else if (kind == "csum") {
    const auto parts = split(rest, ':');
    if (parts.size() != 1 && parts.size() != 2) throw std::invalid_argument("expected csum:p1xq1,...[:signs=+,-]");
    ConnectedSumModel t;
    for (auto f : split(parts[0], ',')) {
      const auto xs = split(trim(f), 'x');
      if (xs.size() != 2) throw std::invalid_argument("connected sum factor must look like 2x3");
      t.factors.emplace_back(parse_int(xs[0], "p"), parse_int(xs[1], "q"));
    }
    if (parts.size() == 2) {
      auto s = trim(parts[1]);
      if (s.substr(0, 6) != "signs=") throw std::invalid_argument("expected signs=+,-,...");
      for (auto sign : split(s.substr(6), ',')) {
        sign = trim(sign);
        if (sign == "+" || sign == "+1" || sign == "1")
          t.signs.push_back(1);
        else if (sign == "-" || sign == "-1")
          t.signs.push_back(-1);
        else
          throw std::invalid_argument("sign must be + or -");
      }
    }
    space = t;
  } else if (kind == "cw") {
    const auto sep = rest.find(':');
    if (sep == std::string_view::npos) throw std::invalid_argument("expected cw:n:\"matrix\"");
    space = TwoCellModel{parse_int(rest.substr(0, sep), "n"), parse_int_matrix(std::string(trim(rest.substr(sep + 1))))};
  } else if (kind == "betti1") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("expected betti1:n:m");
    const int n = parse_int(parts[0], "n");
    if (n != 2 && n != 4 && n != 8) throw std::invalid_argument("betti-one: n must be 2, 4 or 8");
    space = make_betti_one(n, parse_ll(parts[1], "m"));
  } else {
    throw std::invalid_argument("unknown space family '" + std::string(kind) + "'");
  }
  validate(space);
  return space;
}

std::string format_space(const SpaceModel& space) {
  return std::visit(
      overloaded{
          [](const ManifoldModel& m) {
            std::string s = "manifold:" + std::to_string(m.n) + ":" + std::to_string(m.r);
            if (m.matrix) s += ":" + format_int_matrix(*m.matrix);
            return s;
          },
          [](const ConnectedSumModel& t) {
            std::string s = "csum:";
            for (std::size_t i = 0; i < t.factors.size(); ++i) {
              if (i) s += ",";
              s += std::to_string(t.factors[i].first) + "x" + std::to_string(t.factors[i].second);
            }
            if (!t.signs.empty()) {
              s += ":signs=";
              for (std::size_t i = 0; i < t.signs.size(); ++i) s += (i ? "," : "") + std::string(t.signs[i] > 0 ? "+" : "-");
            }
            return s;
          },
          [](const TwoCellModel& x) { return "cw:" + std::to_string(x.n) + ":" + format_int_matrix(x.form); },
          [](const BettiOneModel& b) { return "betti1:" + std::to_string(b.n) + ":" + std::to_string(b.m); },
      },
      space);
}

std::string space_kind(const SpaceModel& space) {
  switch (space.index()) {
    case 0: return "manifold";
    case 1: return "connected-sum";
    case 2: return "cw";
    default: return "betti-one";
  }
}

}  // namespace looptop
