#include "maskbox/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "maskbox/errors.hpp"

namespace maskbox {

namespace {

double area_of(const std::vector<Point2>& poly) {
    if (poly.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % poly.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return std::abs(twice) / 2.0;
}

double coordinate_scale(const RotatedBox& p) {
    double s = 1.0;
    for (const auto& c : p.corners) s = std::max({s, std::abs(c.x), std::abs(c.y)});
    return s;
}

// Counterclockwise copy (standard orientation of the coordinate algebra).
std::vector<Point2> oriented_ccw(const RotatedBox& p) {
    std::vector<Point2> poly(p.corners.begin(), p.corners.end());
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % poly.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    if (twice < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

void require_convex(const RotatedBox& p, double eps) {
    int sign = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Point2 e1 = p.corners[(i + 1) % 4] - p.corners[i];
        const Point2 e2 = p.corners[(i + 2) % 4] - p.corners[(i + 1) % 4];
        const double c = cross(e1, e2);
        if (std::abs(c) <= eps) continue;
        const int s = c > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            throw std::invalid_argument("polygon_iou: non-convex polygon");
        }
    }
}

// Sutherland-Hodgman clip of a convex subject by a convex CCW clip polygon.
std::vector<Point2> clip_convex(std::vector<Point2> subject, const std::vector<Point2>& clip,
                                double eps) {
    for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
        const Point2 a = clip[i];
        const Point2 b = clip[(i + 1) % clip.size()];
        const Point2 edge = b - a;

        std::vector<Point2> output;
        output.reserve(subject.size() + 4);
        for (std::size_t j = 0; j < subject.size(); ++j) {
            const Point2& p = subject[j];
            const Point2& q = subject[(j + 1) % subject.size()];
            const double side_p = cross(edge, p - a);
            const double side_q = cross(edge, q - a);
            const bool in_p = side_p >= -eps;
            const bool in_q = side_q >= -eps;
            if (in_p) output.push_back(p);
            if (in_p != in_q) {
                const double t = side_p / (side_p - side_q);
                output.push_back(p + (q - p) * t);
            }
        }
        subject = std::move(output);
    }
    return subject;
}

}  // namespace

double polygon_iou(const RotatedBox& p, const RotatedBox& q) {
    const double area_p = polygon_area(p);
    const double area_q = polygon_area(q);
    if (area_p < 1e-12 || area_q < 1e-12) return 0.0;

    const double scale = std::max(coordinate_scale(p), coordinate_scale(q));
    const double eps = 1e-12 * scale * scale;
    require_convex(p, eps);
    require_convex(q, eps);

    const auto inter = clip_convex(oriented_ccw(p), oriented_ccw(q), 1e-12 * scale);
    double area_i = area_of(inter);
    area_i = std::min(area_i, std::min(area_p, area_q));
    return area_i / (area_p + area_q - area_i);
}

std::size_t GroundTruthSequence::labeled_count() const {
    std::size_t n = 0;
    for (const auto& f : frames) {
        if (f.has_value()) ++n;
    }
    return n;
}

GroundTruthSequence load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "'");

    GroundTruthSequence gt;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;

        std::array<double, 8> vals{};
        std::stringstream ss(line);
        std::string token;
        int count = 0;
        bool any_nan = false;
        while (std::getline(ss, token, ',')) {
            if (count >= 8) {
                ++count;
                break;
            }
            try {
                vals[count] = std::stod(token);
            } catch (const std::exception&) {
                throw io_error("ground truth line " + std::to_string(line_no) +
                               ": bad value '" + token + "'");
            }
            if (std::isnan(vals[count])) any_nan = true;
            ++count;
        }
        if (count != 8) {
            throw io_error("ground truth line " + std::to_string(line_no) +
                           ": expected 8 comma-separated values");
        }
        if (any_nan) {
            gt.frames.push_back(std::nullopt);
        } else {
            gt.frames.push_back(RotatedBox{{Point2{vals[0], vals[1]}, Point2{vals[2], vals[3]},
                                            Point2{vals[4], vals[5]}, Point2{vals[6], vals[7]}}});
        }
    }
    return gt;
}

std::vector<double> TrackingReport::per_frame_overlap() const {
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& f : frames) {
        out.push_back(f.status == FrameStatus::tracked ? f.overlap : 0.0);
    }
    return out;
}

TrackingReport supervised_run(const std::function<RotatedBox(std::size_t)>& predictions,
                              const GroundTruthSequence& ground_truth,
                              const SupervisedOptions& options) {
    const std::size_t n = ground_truth.frames.size();
    if (n == 0) throw std::invalid_argument("supervised_run: empty ground truth");
    if (ground_truth.labeled_count() == 0) {
        throw std::invalid_argument("supervised_run: ground truth has no labeled frames");
    }
    if (options.burn_in < 0) throw std::invalid_argument("supervised_run: negative burn-in");

    TrackingReport report;
    report.frames.resize(n);

    int burn_remaining = 0;
    bool pending_resume = false;
    bool started = false;
    int segments = 0;
    double overlap_sum = 0.0;
    std::size_t tracked_frames = 0;

    for (std::size_t f = 0; f < n; ++f) {
        if (burn_remaining > 0) {
            report.frames[f] = {FrameStatus::burn_in, 0.0};
            report.skipped_frames.push_back(f);
            if (--burn_remaining == 0) pending_resume = true;
            continue;
        }
        if (pending_resume) {
            report.reinit_frames.push_back(f);
            ++segments;
            pending_resume = false;
        }
        if (!ground_truth.frames[f].has_value()) {
            report.frames[f] = {FrameStatus::unlabeled, 0.0};
            continue;
        }
        if (!started) {
            started = true;
            ++segments;
        }
        const double iou = polygon_iou(predictions(f), *ground_truth.frames[f]);
        if (iou <= 0.0) {
            // Verbatim protocol: a failure is no intersection at all.
            report.frames[f] = {FrameStatus::failure, 0.0};
            ++report.failures;
            burn_remaining = options.burn_in;
            pending_resume = options.burn_in == 0;
        } else {
            report.frames[f] = {FrameStatus::tracked, iou};
            overlap_sum += iou;
            ++tracked_frames;
        }
    }

    if (tracked_frames > 0) {
        report.accuracy = overlap_sum / static_cast<double>(tracked_frames);
    } else {
        report.accuracy = 0.0;
        report.empty_success_set = true;
    }
    report.robustness_ratio =
        static_cast<double>(report.failures) / static_cast<double>(std::max(1, segments));
    return report;
}

TrackingReport supervised_run(std::span<const RotatedBox> predictions,
                              const GroundTruthSequence& ground_truth,
                              const SupervisedOptions& options) {
    if (predictions.size() != ground_truth.frames.size()) {
        throw std::invalid_argument("supervised_run: prediction/ground-truth length mismatch");
    }
    return supervised_run([&](std::size_t f) { return predictions[f]; }, ground_truth, options);
}

}  // namespace maskbox
