#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "maskbox/geometry.hpp"

namespace maskbox {

/// Per-frame ground truth; unlabeled frames are nullopt.
struct GroundTruthSequence {
    std::vector<std::optional<RotatedBox>> frames;

    std::size_t labeled_count() const;
};

/// One line per frame: "x1,y1,x2,y2,x3,y3,x4,y4"; an octuple of nan marks an
/// unlabeled frame. Throws io_error on malformed lines.
GroundTruthSequence load_ground_truth(const std::filesystem::path& path);

enum class FrameStatus { tracked, failure, burn_in, unlabeled };

struct FrameOutcome {
    FrameStatus status = FrameStatus::unlabeled;
    double overlap = 0.0;  // meaningful for tracked frames, 0 otherwise
};

struct TrackingReport {
    double accuracy = 0.0;          // mean overlap over tracked frames
    int failures = 0;               // zero-overlap events on labeled frames
    double robustness_ratio = 0.0;  // failures / tracking segments started
    bool empty_success_set = false; // no frame was successfully tracked
    std::vector<FrameOutcome> frames;
    std::vector<std::size_t> reinit_frames;   // first frame of each resumed tracking
    std::vector<std::size_t> skipped_frames;  // burn-in frames after each failure

    std::vector<double> per_frame_overlap() const;
};

/// Intersection-over-union of two convex quadrilaterals. Intersection by
/// convex polygon clipping, union by inclusion-exclusion. Degenerate
/// zero-area inputs give 0. Throws std::invalid_argument for non-convex input.
double polygon_iou(const RotatedBox& p, const RotatedBox& q);

struct SupervisedOptions {
    int burn_in = 5;  // frames skipped after a failure before tracking resumes
};

/// Supervised protocol: a zero-overlap labeled frame is a failure; the next
/// burn_in frames are skipped and excluded from accuracy; tracking then
/// resumes. Predictions are requested only for frames that are evaluated.
/// Throws std::invalid_argument when no frame is labeled.
TrackingReport supervised_run(const std::function<RotatedBox(std::size_t)>& predictions,
                              const GroundTruthSequence& ground_truth,
                              const SupervisedOptions& options = {});

/// Convenience overload for precomputed predictions; sizes must match.
TrackingReport supervised_run(std::span<const RotatedBox> predictions,
                              const GroundTruthSequence& ground_truth,
                              const SupervisedOptions& options = {});

}  // namespace maskbox
