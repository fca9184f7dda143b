#include "dynbc/datum.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dynbc/error.hpp"

namespace dynbc {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " '" + s + "'");
    }
}

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " '" + s + "'");
    }
}

double angle_of(const Point& y) { return std::atan2(y[1], y[0]); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::vector<std::vector<double>> read_table(const std::string& path, const std::string& header, std::size_t cols) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open datum file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("datum file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw ConfigError("datum file '" + path + "' must start with header '" + header + "'");
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != cols)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(cols) + " fields");
        std::vector<double> row;
        for (const auto& f : fields) row.push_back(to_double(f, "value at " + path + ":" + std::to_string(lineno)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

BoundaryDatum BoundaryDatum::constant(const DomainSpec& dom, double c) {
    if (!std::isfinite(c)) throw ConfigError("constant datum must be finite");
    std::ostringstream name;
    name.precision(17);
    name << "constant:" << c;
    BoundaryDatum d(dom, Kind::Constant, name.str());
    d.constant_ = c;
    return d;
}

BoundaryDatum BoundaryDatum::mode(const DomainSpec& dom, const ModeIndex& mode) {
    mode.validate(dom);
    BoundaryDatum d(dom, Kind::Basis, "basis:" + std::to_string(mode.degree) + ":" + std::to_string(mode.m));
    d.mode_ = mode;
    return d;
}

BoundaryDatum BoundaryDatum::parse(const DomainSpec& dom, const std::string& selector) {
    const auto parts = split(selector, ':');
    if (parts.empty()) throw ConfigError("empty datum selector");
    const std::string& head = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n) throw ConfigError("malformed datum selector '" + selector + "'");
    };
    if (head == "constant") {
        need(2);
        return constant(dom, to_double(parts[1], "constant"));
    }
    if (head == "cos" || head == "sin") {
        need(2);
        if (dom.dim() != 2) throw ConfigError("datum '" + head + "' is only defined on the circle");
        const int n = to_int(parts[1], "order");
        if (n < 0 || (head == "sin" && n == 0)) throw ConfigError("invalid order in '" + selector + "'");
        BoundaryDatum d(dom, head == "cos" ? Kind::Cos : Kind::Sin, selector);
        d.order_ = n;
        return d;
    }
    if (head == "basis") {
        need(3);
        try {
            return mode(dom, {to_int(parts[1], "degree"), to_int(parts[2], "order")});
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    if (head == "step") {
        need(1);
        return {dom, Kind::Step, "step"};
    }
    if (head == "mixed") {
        need(1);
        if (dom.dim() != 2) throw ConfigError("datum 'mixed' is only defined on the circle");
        return {dom, Kind::Mixed, "mixed"};
    }
    throw ConfigError("unknown datum selector '" + selector + "'");
}

BoundaryDatum BoundaryDatum::from_csv(const DomainSpec& dom, const std::string& path, int n_max) {
    BoundaryDatum d(dom, Kind::Table, "csv:" + path);
    std::vector<double> values;
    if (dom.dim() == 2) {
        const auto rows = read_table(path, "angle,value", 2);
        const std::size_t G = rows.size();
        for (std::size_t j = 0; j < G; ++j) {
            if (!near(rows[j][0], 2.0 * pi * static_cast<double>(j) / static_cast<double>(G)))
                throw ConfigError("datum angles must be the uniform grid 2 pi j / G in order (row " +
                                  std::to_string(j + 1) + ")");
            values.push_back(rows[j][1]);
        }
    } else {
        const auto rows = read_table(path, "colatitude,longitude,value", 3);
        std::size_t n_lon = 0;
        while (n_lon < rows.size() && rows[n_lon][0] == rows[0][0]) ++n_lon;
        if (n_lon == 0 || rows.size() % n_lon != 0) throw ConfigError("datum rows do not form a sphere grid");
        const auto grid = SphereGrid::make(static_cast<int>(rows.size() / n_lon), static_cast<int>(n_lon));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::size_t i = r / n_lon;
            const std::size_t j = r % n_lon;
            if (!near(rows[r][0], grid.colatitudes[i]) || !near(rows[r][1], grid.longitude(static_cast<int>(j))))
                throw ConfigError("datum nodes must be Gauss-Legendre colatitudes x uniform longitudes, row-major (row " +
                                  std::to_string(r + 1) + ")");
            values.push_back(rows[r][2]);
        }
        d.grid_ = std::make_shared<const SphereGrid>(grid);
    }
    d.samples_ = std::make_shared<const std::vector<double>>(std::move(values));
    try {
        d.field_ = std::make_shared<const SpectralField>(d.spectral(n_max));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("datum file '") + path + "': " + e.what());
    }
    return d;
}

double BoundaryDatum::operator()(const Point& y) const {
    double v = 0.0;
    switch (kind_) {
        case Kind::Constant: v = constant_; break;
        case Kind::Cos: v = std::cos(order_ * angle_of(y)); break;
        case Kind::Sin: v = std::sin(order_ * angle_of(y)); break;
        case Kind::Basis: v = boundary_basis(dom_, mode_, y); break;
        case Kind::Step: v = (dom_.dim() == 2 ? y[0] : y[2]) > 0.0 ? 1.0 : 0.0; break;
        case Kind::Mixed: {
            const double th = angle_of(y);
            v = 1.0 + std::cos(th) + 0.25 * std::cos(3.0 * th);
            break;
        }
        case Kind::Table: v = field_->boundary_value(y); break;
    }
    return scale_ * v;
}

SpectralField BoundaryDatum::spectral(int n_max) const {
    if (kind_ != Kind::Table) return project_function(dom_, [this](const Point& y) { return (*this)(y); }, n_max);
    SpectralField f = dom_.dim() == 2 ? project_circle(dom_, *samples_, n_max)
                                      : project_sphere(dom_, *grid_, *samples_, n_max);
    return scale_ == 1.0 ? f : f.scaled(scale_);
}

BoundaryDatum BoundaryDatum::scaled(double c) const {
    if (!std::isfinite(c)) throw ConfigError("datum scale must be finite");
    BoundaryDatum d = *this;
    d.scale_ *= c;
    std::ostringstream name;
    name.precision(17);
    name << c << "*" << name_;
    d.name_ = name.str();
    return d;
}

}  // namespace dynbc
