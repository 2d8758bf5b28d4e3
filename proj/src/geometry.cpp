// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace spatialcs {

namespace {

constexpr double kSupportSlack = 1e-12;

double parse_number(const std::string& text, const std::string& context)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + text + "' in " + context);
    }
    if (used != text.size() || !std::isfinite(v))
        throw ConfigError("cannot parse number '" + text + "' in " + context);
    return v;
}

std::vector<double> parse_list(const std::string& text, char sep, const std::string& context)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(parse_number(item, context));
    if (out.empty())
        throw ConfigError("empty list in " + context);
    return out;
}

}  // namespace

std::string to_string(ArrayMode mode)
{
    return mode == ArrayMode::transceiver ? "transceiver" : "independent";
}

ArrayMode parse_array_mode(const std::string& text)
{
    if (text == "independent")
        return ArrayMode::independent;
    if (text == "transceiver")
        return ArrayMode::transceiver;
    throw ConfigError("unknown array mode '" + text + "' (expected independent|transceiver)");
}

double sinc(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

PositionDistribution PositionDistribution::uniform(double lo, double hi)
{
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
        throw ConfigError("uniform distribution needs finite lo < hi");
    PositionDistribution d;
    d.kind_ = Kind::uniform;
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

PositionDistribution PositionDistribution::point_mass(double value)
{
    if (!std::isfinite(value))
        throw ConfigError("point mass must be finite");
    PositionDistribution d;
    d.kind_ = Kind::point_mass;
    d.lo_ = d.hi_ = value;
    d.values_ = {value};
    d.weights_ = {1.0};
    return d;
}

PositionDistribution PositionDistribution::discrete(std::vector<double> values, std::vector<double> weights)
{
    if (values.empty())
        throw ConfigError("discrete distribution needs at least one value");
    if (weights.empty())
        weights.assign(values.size(), 1.0);
    if (weights.size() != values.size())
        throw ConfigError("discrete distribution: values and weights differ in length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ConfigError("discrete distribution: weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0))
        throw ConfigError("discrete distribution: weights sum to zero");
    for (double v : values)
        if (!std::isfinite(v))
            throw ConfigError("discrete distribution: values must be finite");
    for (double& w : weights)
        w /= total;
    PositionDistribution d;
    d.kind_ = Kind::discrete;
    d.values_ = std::move(values);
    d.weights_ = std::move(weights);
    d.lo_ = *std::min_element(d.values_.begin(), d.values_.end());
    d.hi_ = *std::max_element(d.values_.begin(), d.values_.end());
    return d;
}

PositionDistribution PositionDistribution::parse(const std::string& descriptor, double half_width)
{
    const auto colon = descriptor.find(':');
    const std::string head = descriptor.substr(0, colon);
    const std::string body = colon == std::string::npos ? std::string() : descriptor.substr(colon + 1);
    if (head == "uniform") {
        if (body.empty())
            return uniform(-half_width, half_width);
        auto ends = parse_list(body, ',', "uniform descriptor");
        if (ends.size() != 2)
            throw ConfigError("uniform descriptor expects 'uniform:lo,hi'");
        return uniform(ends[0], ends[1]);
    }
    if (head == "point") {
        if (body.empty())
            throw ConfigError("point descriptor expects 'point:value'");
        return point_mass(parse_number(body, "point descriptor"));
    }
    if (head == "discrete") {
        if (body.empty())
            throw ConfigError("discrete descriptor expects 'discrete:v1/v2/...'");
        const auto at = body.find('@');
        auto values = parse_list(body.substr(0, at), '/', "discrete descriptor");
        std::vector<double> weights;
        if (at != std::string::npos)
            weights = parse_list(body.substr(at + 1), '/', "discrete descriptor weights");
        return discrete(std::move(values), std::move(weights));
    }
    throw ConfigError("unsupported distribution descriptor '" + descriptor + "'");
}

cplx PositionDistribution::characteristic(double u) const
{
    switch (kind_) {
    case Kind::uniform: {
        const double mid = 0.5 * (lo_ + hi_);
        const double half = 0.5 * (hi_ - lo_);
        return std::polar(sinc(u * half), u * mid);
    }
    case Kind::point_mass:
        return std::polar(1.0, u * lo_);
    case Kind::discrete: {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            acc += weights_[i] * std::polar(1.0, u * values_[i]);
        return acc;
    }
    }
    return 0.0;
}

bool PositionDistribution::is_even() const
{
    switch (kind_) {
    case Kind::uniform:
        return lo_ == -hi_;
    case Kind::point_mass:
        return lo_ == 0.0;
    case Kind::discrete: {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            double mirrored = 0.0;
            for (std::size_t k = 0; k < values_.size(); ++k)
                if (values_[k] == -values_[i])
                    mirrored += weights_[k];
            if (std::abs(mirrored - weights_[i]) > 1e-14)
                return false;
        }
        return true;
    }
    }
    return false;
}

double PositionDistribution::support_min() const { return lo_; }
double PositionDistribution::support_max() const { return hi_; }

double PositionDistribution::draw(Rng& rng) const
{
    switch (kind_) {
    case Kind::uniform:
        return std::uniform_real_distribution<double>(lo_, hi_)(rng);
    case Kind::point_mass:
        return lo_;
    case Kind::discrete: {
        std::discrete_distribution<std::size_t> pick(weights_.begin(), weights_.end());
        return values_[pick(rng)];
    }
    }
    return 0.0;
}

std::string PositionDistribution::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::uniform:
        os << "uniform:" << lo_ << ',' << hi_;
        break;
    case Kind::point_mass:
        os << "point:" << lo_;
        break;
    case Kind::discrete:
        os << "discrete:";
        for (std::size_t i = 0; i < values_.size(); ++i)
            os << (i ? "/" : "") << values_[i];
        os << '@';
        for (std::size_t i = 0; i < weights_.size(); ++i)
            os << (i ? "/" : "") << weights_[i];
        break;
    }
    return os.str();
}

ArrayConfig ArrayConfig::canonical(int M, int N, double Z, ArrayMode mode)
{
    ArrayConfig cfg;
    cfg.M = M;
    cfg.N = N;
    cfg.Z = Z;
    cfg.Z_tx = 0.5 * Z;
    cfg.Z_rx = 0.5 * Z;
    cfg.mode = mode;
    cfg.tx_dist = PositionDistribution::uniform(-0.5, 0.5);
    cfg.rx_dist = cfg.tx_dist;
    return cfg;
}

void ArrayConfig::validate() const
{
    if (M < 1 || N < 1)
        throw ConfigError("array needs M >= 1 and N >= 1");
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw ConfigError("aperture Z must be positive");
    if (Z_tx < 0.0 || Z_rx < 0.0)
        throw ConfigError("transmit/receive apertures must be nonnegative");
    if (std::abs(Z_tx + Z_rx - Z) > 1e-12 * Z)
        throw ConfigError("Z_tx + Z_rx must equal Z");
    const double tx_half = Z_tx / Z;
    const double rx_half = Z_rx / Z;
    if (tx_dist.support_min() < -tx_half - kSupportSlack || tx_dist.support_max() > tx_half + kSupportSlack)
        throw ConfigError("transmit distribution support exceeds [-Z_tx/Z, Z_tx/Z]");
    if (rx_dist.support_min() < -rx_half - kSupportSlack || rx_dist.support_max() > rx_half + kSupportSlack)
        throw ConfigError("receive distribution support exceeds [-Z_rx/Z, Z_rx/Z]");
    if (mode == ArrayMode::transceiver) {
        if (M != N)
            throw ConfigError("transceiver mode requires M == N");
        if (!(tx_dist == rx_dist))
            throw ConfigError("transceiver mode requires identical transmit and receive distributions");
    }
}

bool AngleGrid::is_uniform() const { return !std::isnan(spacing); }

ElementPositions sample_positions(const ArrayConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    Rng rng = make_rng(seed);
    ElementPositions pos;
    pos.zeta.resize(static_cast<std::size_t>(cfg.N));
    for (double& z : pos.zeta)
        z = cfg.rx_dist.draw(rng);
    if (cfg.mode == ArrayMode::transceiver) {
        pos.xi = pos.zeta;
    } else {
        pos.xi.resize(static_cast<std::size_t>(cfg.M));
        for (double& x : pos.xi)
            x = cfg.tx_dist.draw(rng);
    }
    return pos;
}

AngleGrid canonical_grid(double Z)
{
    if (!(Z >= 1.0) || std::floor(Z) != Z || Z > 1e7)
        throw ConfigError("canonical grid needs a positive integer aperture Z");
    const int zi = static_cast<int>(Z);
    AngleGrid grid;
    grid.Z = Z;
    grid.spacing = 2.0 / Z;
    grid.phi.resize(static_cast<std::size_t>(zi) + 1);
    for (int i = 0; i <= zi; ++i)
        grid.phi[static_cast<std::size_t>(i)] = (2.0 * i - Z) / Z;
    return grid;
}

AngleGrid make_grid(std::vector<double> phi, double Z)
{
    if (phi.size() < 2)
        throw ConfigError("grid needs at least two points");
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw ConfigError("grid aperture Z must be positive");
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!(phi[i] >= -1.0 - 1e-12 && phi[i] <= 1.0 + 1e-12))
            throw ConfigError("grid points must lie in [-1, 1]");
        if (i > 0 && !(phi[i] > phi[i - 1]))
            throw ConfigError("grid points must be strictly increasing");
    }
    AngleGrid grid;
    grid.Z = Z;
    const double step = phi[1] - phi[0];
    bool uniform = true;
    for (std::size_t i = 2; i < phi.size() && uniform; ++i)
        uniform = std::abs((phi[i] - phi[i - 1]) - step) <= 1e-12 * std::max(1.0, std::abs(step));
    grid.spacing = uniform ? step : std::numeric_limits<double>::quiet_NaN();
    grid.phi = std::move(phi);
    return grid;
}

CVector steering_rx(const ElementPositions& pos, double Z, double theta)
{
    CVector b(pos.N());
    for (int n = 0; n < pos.N(); ++n)
        b(n) = std::polar(1.0, pi * Z * theta * pos.zeta[static_cast<std::size_t>(n)]);
    return b;
}

CVector steering_tx(const ElementPositions& pos, double Z, double theta)
{
    CVector c(pos.M());
    for (int m = 0; m < pos.M(); ++m)
        c(m) = std::polar(1.0, pi * Z * theta * pos.xi[static_cast<std::size_t>(m)]);
    return c;
}

CVector steering_virtual(const ElementPositions& pos, double Z, double theta)
{
    const int M = pos.M();
    const int N = pos.N();
    CVector a(static_cast<Eigen::Index>(M) * N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            a(static_cast<Eigen::Index>(N) * m + n) = std::polar(
                1.0, pi * Z * theta * (pos.xi[static_cast<std::size_t>(m)] + pos.zeta[static_cast<std::size_t>(n)]));
    return a;
}

NyquistArray nyquist_virtual_ula(int M, int N)
{
    if (M < 1 || N < 1 || static_cast<long long>(M) * N < 2)
        throw ConfigError("filled virtual array needs M, N >= 1 and MN >= 2");
    const int MN = M * N;
    NyquistArray out;
    const double Z = 0.5 * (MN - 1);
    out.config.M = M;
    out.config.N = N;
    out.config.Z = Z;
    out.config.Z_rx = 0.5 * (N - 1);
    out.config.Z_tx = 0.5 * static_cast<double>(N) * (M - 1);
    out.config.mode = ArrayMode::independent;
    std::vector<double> zeta(static_cast<std::size_t>(N));
    std::vector<double> xi(static_cast<std::size_t>(M));
    for (int n = 0; n < N; ++n)
        zeta[static_cast<std::size_t>(n)] = (n - 0.5 * (N - 1)) / Z;
    for (int m = 0; m < M; ++m)
        xi[static_cast<std::size_t>(m)] = N * (m - 0.5 * (M - 1)) / Z;
    out.config.rx_dist = N == 1 ? PositionDistribution::point_mass(0.0) : PositionDistribution::discrete(zeta, {});
    out.config.tx_dist = M == 1 ? PositionDistribution::point_mass(0.0) : PositionDistribution::discrete(xi, {});
    out.positions.zeta = std::move(zeta);
    out.positions.xi = std::move(xi);
    std::vector<double> phi(static_cast<std::size_t>(MN));
    for (int g = 0; g < MN; ++g)
        phi[static_cast<std::size_t>(g)] = -1.0 + 2.0 * g / MN;
    out.grid = make_grid(std::move(phi), Z);
    return out;
}

}  // namespace spatialcs
