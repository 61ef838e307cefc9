#include "mncx/set_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace mncx {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

void print_dense(std::ostringstream& out, const SparseVector& v) {
  out << '[';
  int width = v.max_index();
  for (int i = 1; i <= width; ++i) {
    if (i > 1) out << ", ";
    out << format_double(v.coeff(i));
  }
  out << ']';
}

void print_set(std::ostringstream& out, const StructuredSet& s) {
  s.visit([&](const auto& node) {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, TailFamily> || std::is_same_v<T, SphereTail> ||
                  std::is_same_v<T, BallTail>) {
      if constexpr (std::is_same_v<T, TailFamily>) {
        out << "tail(";
      } else if constexpr (std::is_same_v<T, SphereTail>) {
        out << "sphere(";
      } else {
        out << "ball(";
      }
      out << "center=";
      print_dense(out, node.center);
      out << ", r=" << format_double(node.radius) << ", start=" << node.tail_start << ')';
    } else if constexpr (std::is_same_v<T, FiniteSet>) {
      out << "finite([";
      for (std::size_t i = 0; i < node.points.points.size(); ++i) {
        if (i > 0) out << ", ";
        print_dense(out, node.points.points[i]);
      }
      out << "])";
    } else {
      out << "union(";
      for (std::size_t i = 0; i < node.components.size(); ++i) {
        if (i > 0) out << ", ";
        print_set(out, node.components[i]);
      }
      out << ')';
    }
  });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  StructuredSet parse() {
    StructuredSet s = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after set expression");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_keyword(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) {
      fail("expected '" + std::string(word) + "'");
    }
    pos_ += word.size();
  }

  std::string read_identifier() {
    skip_ws();
    std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == begin) fail("expected a set kind (tail/sphere/ball/finite/union)");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  double parse_real() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc()) fail("expected a real number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (!std::isfinite(value)) fail("number out of range");
    return value;
  }

  int parse_int() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    int value = 0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc()) fail("expected an integer");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }

  SparseVector parse_dense() {
    expect('[');
    std::vector<double> coeffs;
    skip_ws();
    if (!try_consume(']')) {
      while (true) {
        coeffs.push_back(parse_real());
        if (try_consume(']')) break;
        expect(',');
      }
    }
    return SparseVector::from_dense(coeffs);
  }

  template <class Family>
  StructuredSet parse_family() {
    Family f;
    expect('(');
    expect_keyword("center");
    expect('=');
    f.center = parse_dense();
    expect(',');
    expect_keyword("r");
    expect('=');
    f.radius = parse_real();
    expect(',');
    expect_keyword("start");
    expect('=');
    f.tail_start = parse_int();
    expect(')');
    return StructuredSet(std::move(f));
  }

  StructuredSet parse_node() {
    std::string kind = read_identifier();
    if (kind == "tail") return parse_family<TailFamily>();
    if (kind == "sphere") return parse_family<SphereTail>();
    if (kind == "ball") return parse_family<BallTail>();
    if (kind == "finite") {
      expect('(');
      expect('[');
      FiniteSet f;
      while (true) {
        f.points.points.push_back(parse_dense());
        if (try_consume(']')) break;
        expect(',');
      }
      expect(')');
      return StructuredSet(std::move(f));
    }
    if (kind == "union") {
      expect('(');
      UnionSet u;
      while (true) {
        u.components.push_back(parse_node());
        if (try_consume(')')) break;
        expect(',');
      }
      return StructuredSet(std::move(u));
    }
    fail("unknown set kind '" + kind + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const StructuredSet& s) {
  std::ostringstream out;
  print_set(out, s);
  return out.str();
}

StructuredSet parse_set(std::string_view text) {
  Parser parser(text);
  StructuredSet s = parser.parse();
  s.validate();
  return s;
}

}  // namespace mncx
