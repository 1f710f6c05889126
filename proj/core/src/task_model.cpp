#include "leosim/task_model.hpp"

#include <cmath>

#include "leosim/error.hpp"

namespace leosim {

void FrameModel::validate() const {
    if (!(area_km2 > 0.0)) throw ValidationError("frame area_km2 must be > 0");
    if (!(gsd_m_per_px > 0.0)) throw ValidationError("gsd_m_per_px must be > 0");
    if (image_width_px < 1 || image_height_px < 1) throw ValidationError("image resolution must be >= 1 px");
    if (!(image_bits > 0.0)) throw ValidationError("image size must be > 0");
    if (!(bbox_bits > 0.0)) throw ValidationError("bbox_size_bits must be > 0");
    if (!(vessels_per_image > 0.0)) throw ValidationError("vessels_per_image must be > 0");
    if (!(vessel_fraction > 0.0 && vessel_fraction <= 1.0)) throw ValidationError("vessel_fraction must be in (0, 1]");
    if (!(recall > 0.0 && recall <= 1.0)) throw ValidationError("recall must be in (0, 1]");
}

std::uint64_t FrameModel::images_per_frame() const {
    const double image_area_m2 = gsd_m_per_px * gsd_m_per_px * image_width_px * image_height_px;
    return static_cast<std::uint64_t>(std::ceil(area_km2 * 1e6 / image_area_m2));
}

std::uint64_t FrameModel::frame_bits() const {
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(images_per_frame()) * image_bits));
}

void ComputeModel::validate() const {
    if (!(cpu_hz > 0.0)) throw ValidationError("cpu_frequency_hz must be > 0");
    if (cores < 1) throw ValidationError("cores must be >= 1");
    if (!(complexity_mean > 0.0)) throw ValidationError("complexity_mean_cycles_per_bit must be > 0");
    if (!(gamma_shape > 0.0)) throw ValidationError("complexity_gamma_shape must be > 0");
}

double compression_factor(double image_bits, double vessels_per_image, double bbox_bits) {
    if (!(image_bits > 0.0 && vessels_per_image > 0.0 && bbox_bits > 0.0))
        throw DomainError("compression_factor inputs must all be > 0");
    return image_bits / (vessels_per_image * bbox_bits);
}

double semantic_payload(double bits, double vessel_fraction, double rho) {
    if (rho < 1.0) throw DomainError("compression factor rho must be >= 1");
    if (bits < 0.0) throw DomainError("frame size must be >= 0");
    if (!(vessel_fraction > 0.0 && vessel_fraction <= 1.0)) throw DomainError("vessel_fraction must be in (0, 1]");
    return bits * vessel_fraction / rho;
}

std::vector<std::uint64_t> fragment(std::uint64_t bits, int n) {
    if (n < 1) throw DomainError("fragment count must be >= 1");
    const auto count = static_cast<std::uint64_t>(n);
    const std::uint64_t base = bits / count;
    const std::uint64_t extra = bits % count;
    std::vector<std::uint64_t> out(count, base);
    for (std::uint64_t i = 0; i < extra; ++i) ++out[i];
    return out;
}

TaskAssignment assign_task(SatelliteId capturer, const std::vector<SatelliteId>& processors, std::uint64_t bits) {
    if (processors.empty() || processors.front() != capturer)
        throw DomainError("processing set must start with the capturing satellite");
    return {capturer, processors, fragment(bits, static_cast<int>(processors.size()))};
}

double sample_complexity(Rng& rng, const ComputeModel& compute) {
    std::gamma_distribution<double> gamma(compute.gamma_shape, compute.gamma_scale());
    double c = gamma(rng);
    while (!(c > 0.0)) c = gamma(rng);
    return c;
}

double processing_time(double fragment_bits, double complexity, const ComputeModel& compute) {
    if (!(fragment_bits >= 0.0 && complexity > 0.0)) throw DomainError("processing_time needs bits >= 0 and C > 0");
    return fragment_bits * complexity / (compute.cores * compute.cpu_hz);
}

bool detection_succeeds(Rng& rng, double recall) {
    if (recall >= 1.0) return true;
    if (recall <= 0.0) return false;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < recall;
}

}  // namespace leosim
