#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "leosim/orbit.hpp"

namespace leosim {

using Rng = std::mt19937_64;

/// A captured frame and its semantic compression inputs. Sizes in bits.
struct FrameModel {
    double area_km2 = 162.16;
    double gsd_m_per_px = 0.43;
    int image_width_px = 1280;
    int image_height_px = 720;
    double image_bits = 391430.0 * 8.0;  // D_img
    double bbox_bits = 67.2;             // D_bbox
    double vessels_per_image = 2.0;      // N_vessels
    double vessel_fraction = 0.2;        // alpha_vessels
    double recall = 0.9;

    void validate() const;

    // Images needed to tile the frame area at the given GSD.
    std::uint64_t images_per_frame() const;
    // x: total bits to process.
    std::uint64_t frame_bits() const;

    bool operator==(const FrameModel&) const = default;
};

struct ComputeModel {
    double cpu_hz = 1.8e9;
    int cores = 8;
    double complexity_mean = 374.2;  // CPU cycles per bit
    double gamma_shape = 10.0;

    void validate() const;
    double gamma_scale() const { return complexity_mean / gamma_shape; }

    bool operator==(const ComputeModel&) const = default;
};

struct TaskAssignment {
    SatelliteId capturer;
    std::vector<SatelliteId> processors;  // processors[0] == capturer
    std::vector<std::uint64_t> fragment_bits;
};

// rho = D_img / (N_vessels * D_bbox).
double compression_factor(double image_bits, double vessels_per_image, double bbox_bits);

// x_g = x * alpha / rho.
double semantic_payload(double bits, double vessel_fraction, double rho);

// n sizes differing by at most one bit, larger shares first, summing to x.
std::vector<std::uint64_t> fragment(std::uint64_t bits, int n);

TaskAssignment assign_task(SatelliteId capturer, const std::vector<SatelliteId>& processors, std::uint64_t bits);

// Gamma-distributed complexity with mean complexity_mean and shape gamma_shape.
double sample_complexity(Rng& rng, const ComputeModel& compute);

// T_proc = x * C / (cores * f_cpu).
double processing_time(double fragment_bits, double complexity, const ComputeModel& compute);

// Whole-frame detection outcome; true with probability `recall`.
bool detection_succeeds(Rng& rng, double recall);

}  // namespace leosim
