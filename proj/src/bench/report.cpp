// Copyright 2026 The vqlsgp Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vqlsgp/bench/bench.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::bench {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::ofstream open_out(const fs::path &file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + file.string());
    }
    return out;
}

void write_text(const fs::path &file, const std::string &text) {
    auto out = open_out(file);
    out << text;
    if (!out) {
        throw Error(ErrorCode::IoError, "write failed for " + file.string());
    }
}

std::vector<std::vector<std::string>> read_csv(const fs::path &file) {
    std::ifstream in(file);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read " + file.string());
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

double parse_double(const std::string &s) {
    try {
        return std::stod(s);
    } catch (const std::exception &) {
        throw Error(ErrorCode::IoError, "not a number: '" + s + "'");
    }
}

// Maps data coordinates into a fixed plot box.
struct Frame {
    double x0, x1, y0, y1;
    static constexpr double kWidth = 800, kHeight = 500, kLeft = 60, kRight = 20, kTop = 30,
                            kBottom = 50;
    [[nodiscard]] double sx(double x) const {
        return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
    }
    [[nodiscard]] double sy(double y) const {
        return kTop + (y1 - y) / (y1 - y0) * (kHeight - kTop - kBottom);
    }
};

std::string svg_open(const Frame &f, const std::string &title, const std::string &xlabel,
                     const std::string &ylabel) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::kWidth << "\" height=\""
      << Frame::kHeight << "\" viewBox=\"0 0 " << Frame::kWidth << ' ' << Frame::kHeight
      << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<defs><clipPath id=\"plot\"><rect x=\"" << Frame::kLeft << "\" y=\"" << Frame::kTop
      << "\" width=\"" << Frame::kWidth - Frame::kLeft - Frame::kRight << "\" height=\""
      << Frame::kHeight - Frame::kTop - Frame::kBottom << "\"/></clipPath></defs>\n";
    s << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    const double bottom = Frame::kHeight - Frame::kBottom;
    s << "<line x1=\"" << Frame::kLeft << "\" y1=\"" << bottom << "\" x2=\""
      << Frame::kWidth - Frame::kRight << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << Frame::kLeft << "\" y1=\"" << Frame::kTop << "\" x2=\"" << Frame::kLeft
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        s << "<text x=\"" << px(f.sx(xv)) << "\" y=\"" << bottom + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(xv)
          << "</text>\n";
        s << "<text x=\"" << Frame::kLeft - 6 << "\" y=\"" << px(f.sy(yv) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(yv)
          << "</text>\n";
    }
    s << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"" << Frame::kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
      << "</text>\n";
    s << "<text x=\"14\" y=\"" << Frame::kHeight / 2 << "\" transform=\"rotate(-90 14 "
      << Frame::kHeight / 2 << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\">" << ylabel << "</text>\n";
    return s.str();
}

std::string polyline(const Frame &f, std::span<const double> x, std::span<const double> y,
                     const std::string &style) {
    std::ostringstream s;
    s << "<polyline clip-path=\"url(#plot)\" fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        s << px(f.sx(x[i])) << ',' << px(f.sy(y[i])) << ' ';
    }
    s << "\"/>\n";
    return s.str();
}

std::string legend(const std::vector<std::pair<std::string, std::string>> &entries) {
    std::ostringstream s;
    double y = Frame::kTop + 14;
    for (const auto &[label, colour] : entries) {
        const double x = Frame::kWidth - Frame::kRight - 200;
        s << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 24 << "\" y2=\""
          << y - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"3\"/>\n";
        s << "<text x=\"" << x + 30 << "\" y=\"" << y
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        y += 16;
    }
    return s.str();
}

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

std::string slug(std::string_view model) {
    std::string s;
    for (char c : model) {
        s.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_');
    }
    return s;
}

void write_results_csv(const std::vector<RunRecord> &records, const fs::path &file) {
    std::ostringstream s;
    s << "model,kernel,ansatz,pauli_strings,iterations_mean,iterations_std,mse_mean,mse_std,"
         "converged_fraction\n";
    for (const auto &r : records) {
        s << r.model << ',' << r.kernel << ',' << r.ansatz << ',' << r.pauli_strings << ','
          << num(r.iterations_mean) << ',' << num(r.iterations_std) << ',' << num(r.mse_mean)
          << ',' << num(r.mse_std) << ',' << num(r.converged_fraction) << '\n';
    }
    write_text(file, s.str());
}

void write_loss_csv(const LossCurve &curve, const fs::path &file) {
    std::ostringstream s;
    s << "iteration,mean_log10_cost,std_log10_cost\n";
    for (std::size_t k = 0; k < curve.mean_log10.size(); ++k) {
        s << k + 1 << ',' << num(curve.mean_log10[k]) << ',' << num(curve.std_log10[k]) << '\n';
    }
    write_text(file, s.str());
}

void write_regression_csv(const RegressionCurve &curve, const fs::path &file) {
    std::ostringstream s;
    s << "kind,x,mean,variance,truth\n";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        s << "test," << num(curve.x[i]) << ',' << num(curve.mean[i]) << ','
          << num(curve.variance[i]) << ',' << num(curve.truth[i]) << '\n';
    }
    for (std::size_t i = 0; i < curve.train_x.size(); ++i) {
        s << "train," << num(curve.train_x[i]) << ',' << num(curve.train_y[i]) << ",0,0\n";
    }
    write_text(file, s.str());
}

LossCurve read_loss_csv(const fs::path &file, std::string model) {
    const auto rows = read_csv(file);
    LossCurve c{std::move(model), {}, {}};
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() < 3) {
            throw Error(ErrorCode::IoError, "short row in " + file.string());
        }
        c.mean_log10.push_back(parse_double(rows[i][1]));
        c.std_log10.push_back(parse_double(rows[i][2]));
    }
    return c;
}

RegressionCurve read_regression_csv(const fs::path &file, std::string model) {
    const auto rows = read_csv(file);
    RegressionCurve c;
    c.model = std::move(model);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &r = rows[i];
        if (r.size() < 5) {
            throw Error(ErrorCode::IoError, "short row in " + file.string());
        }
        if (r[0] == "train") {
            c.train_x.push_back(parse_double(r[1]));
            c.train_y.push_back(parse_double(r[2]));
        } else {
            c.x.push_back(parse_double(r[1]));
            c.mean.push_back(parse_double(r[2]));
            c.variance.push_back(parse_double(r[3]));
            c.truth.push_back(parse_double(r[4]));
        }
    }
    return c;
}

std::string regression_svg(const RegressionCurve &c) {
    double lo = -2.5;
    double hi = 2.5;
    for (double v : c.truth) {
        lo = std::min(lo, v - 0.5);
        hi = std::max(hi, v + 0.5);
    }
    const Frame f{c.x.empty() ? 0.0 : c.x.front(), c.x.empty() ? 1.0 : c.x.back(), lo, hi};
    std::string s = svg_open(f, c.model, "x", "y");
    // ±2σ band over runs of non-negative variance.
    std::size_t i = 0;
    while (i < c.x.size()) {
        if (!(c.variance[i] >= 0.0)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < c.x.size() && c.variance[j] >= 0.0) {
            ++j;
        }
        std::ostringstream band;
        band << "<polygon clip-path=\"url(#plot)\" fill=\"#1f77b4\" fill-opacity=\"0.2\" "
                "stroke=\"none\" points=\"";
        for (std::size_t k = i; k < j; ++k) {
            band << px(f.sx(c.x[k])) << ','
                 << px(f.sy(c.mean[k] + 2.0 * std::sqrt(c.variance[k]))) << ' ';
        }
        for (std::size_t k = j; k-- > i;) {
            band << px(f.sx(c.x[k])) << ','
                 << px(f.sy(c.mean[k] - 2.0 * std::sqrt(c.variance[k]))) << ' ';
        }
        band << "\"/>\n";
        s += band.str();
        i = j;
    }
    s += polyline(f, c.x, c.truth, "stroke=\"black\" stroke-width=\"1.5\"");
    s += polyline(f, c.x, c.mean, "stroke=\"#1f77b4\" stroke-width=\"2\" stroke-dasharray=\"6 3\"");
    for (std::size_t k = 0; k < c.train_x.size(); ++k) {
        s += "<circle clip-path=\"url(#plot)\" cx=\"" + px(f.sx(c.train_x[k])) + "\" cy=\"" +
             px(f.sy(c.train_y[k])) + "\" r=\"4\" fill=\"#d62728\"/>\n";
    }
    s += legend({{"latent function", "black"},
                 {"predictive mean", "#1f77b4"},
                 {"training data", "#d62728"}});
    s += "</svg>\n";
    return s;
}

std::string loss_svg(const std::vector<LossCurve> &curves) {
    double len = 1.0;
    double lo = -5.0;
    double hi = 0.0;
    for (const auto &c : curves) {
        len = std::max(len, static_cast<double>(c.mean_log10.size()));
        for (double v : c.mean_log10) {
            lo = std::min(lo, std::floor(v));
            hi = std::max(hi, std::ceil(v));
        }
    }
    const Frame f{1.0, std::max(len, 2.0), lo, hi};
    std::string s = svg_open(f, "Averaged VQLS loss", "iteration", "log10 cost");
    std::vector<std::pair<std::string, std::string>> entries;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto &c = curves[k];
        Vector it(c.mean_log10.size());
        for (std::size_t i = 0; i < it.size(); ++i) {
            it[i] = static_cast<double>(i + 1);
        }
        const std::string colour = kPalette[k % std::size(kPalette)];
        s += polyline(f, it, c.mean_log10, "stroke=\"" + colour + "\" stroke-width=\"2\"");
        entries.emplace_back(c.model, colour);
    }
    s += legend(entries);
    s += "</svg>\n";
    return s;
}

void emit_reports(const BenchResult &result, const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    write_results_csv(result.records, dir / "results.csv");
    for (const auto &c : result.losses) {
        write_loss_csv(c, dir / ("loss_" + slug(c.model) + ".csv"));
    }
    for (const auto &r : result.regressions) {
        write_regression_csv(r, dir / ("regression_" + slug(r.model) + ".csv"));
    }
    render_reports(dir);
}

void render_reports(const fs::path &dir) {
    const auto rows = read_csv(dir / "results.csv");
    std::vector<LossCurve> losses;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string &model = rows[i].at(0);
        const fs::path reg = dir / ("regression_" + slug(model) + ".csv");
        if (fs::exists(reg)) {
            write_text(dir / ("regression_" + slug(model) + ".svg"),
                       regression_svg(read_regression_csv(reg, model)));
        }
        const fs::path loss = dir / ("loss_" + slug(model) + ".csv");
        if (fs::exists(loss)) {
            losses.push_back(read_loss_csv(loss, model));
        }
    }
    if (!losses.empty()) {
        write_text(dir / "loss.svg", loss_svg(losses));
    }
}

} // namespace vqlsgp::bench
