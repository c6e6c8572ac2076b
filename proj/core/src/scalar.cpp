#include "kappa/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace kappa {

namespace {

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace

Scalar Scalar::parse(const std::string& re, const std::string& im) {
  return Scalar(parse_rational(re), parse_rational(im));
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (sgn(im_) == 0) return Scalar(mpq_class(1) / re_);
  mpq_class n = re_ * re_ + im_ * im_;
  return Scalar(re_ / n, -im_ / n);
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::ostringstream os;
  if (sgn(re_) == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    os << im_.get_str() << "*i";
    return os.str();
  }
  os << "(" << re_.get_str() << (sgn(im_) > 0 ? "+" : "-");
  mpq_class a = abs(im_);
  if (a != 1) os << a.get_str() << "*";
  os << "i)";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar(0, 1);
    case 2: return Scalar(-1);
    default: return Scalar(0, -1);
  }
}

mpq_class binomial(const mpq_class& beta, int k) {
  mpq_class c = 1;
  for (int j = 0; j < k; ++j) {
    c *= (beta - j);
    c /= (j + 1);
  }
  return c;
}

}  // namespace kappa
