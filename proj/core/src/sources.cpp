#include "metawave/sources.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace metawave {

namespace {

class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, double>& params)
      : params_(params) {}

  double required(const std::string& key) {
    seen_.insert(key);
    const auto it = params_.find(key);
    if (it == params_.end())
      throw std::invalid_argument("source parameter missing: " + key);
    return it->second;
  }
  double optional(const std::string& key, double fallback) {
    seen_.insert(key);
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }
  void finish(const std::string& source) const {
    for (const auto& [key, value] : params_)
      if (!seen_.count(key))
        throw std::invalid_argument("unknown parameter '" + key +
                                    "' for source " + source);
  }

 private:
  const std::map<std::string, double>& params_;
  std::set<std::string> seen_;
};

}  // namespace

std::function<double(double, const Vec2&)> make_boundary_source(
    const std::string& name, const std::map<std::string, double>& params) {
  ParamReader reader(params);
  if (name == "corner_plane") {
    const double mu_f = reader.required("mu_f");
    const double amp = reader.optional("amplitude", 10.0);
    const double speed = reader.optional("speed", 10.0);
    const double x_cut = reader.optional("x_cut", 0.6);
    reader.finish(name);
    return [=](double t, const Vec2& x) {
      // The signal switches on when the travelling front x + y = speed t
      // passes, so it starts from zero amplitude (continuous onset).
      if (!(speed * t > x.x() + x.y()) || !(x.x() < x_cut)) return 0.0;
      return amp * std::sin(mu_f * M_PI * (x.x() + x.y() - speed * t));
    };
  }
  if (name == "left_gaussian") {
    const double amp = reader.optional("amplitude", 10.0);
    const double speed = reader.optional("speed", 10.0);
    const double k = reader.optional("wavenumber", 20.0);
    reader.finish(name);
    return [=](double t, const Vec2& x) {
      if (!(x.y() - 1.0 < 0.1)) return 0.0;
      const double arg =
          x.x() * x.x() + (x.y() - 1.0) * (x.y() - 1.0) - speed * t;
      return amp * std::exp(-(1.0 + std::sin(k * M_PI * arg)));
    };
  }
  if (name == "zero") {
    reader.finish(name);
    return [](double, const Vec2&) { return 0.0; };
  }
  if (name == "custom-constant") {
    const double value = reader.required("value");
    reader.finish(name);
    return [=](double, const Vec2&) { return value; };
  }
  throw std::invalid_argument(
      "unknown source '" + name +
      "' (expected corner_plane|left_gaussian|zero|custom-constant)");
}

double source_pD(const std::string& name,
                 const std::map<std::string, double>& params, double t,
                 double x, double y) {
  return make_boundary_source(name, params)(t, Vec2(x, y));
}

}  // namespace metawave
