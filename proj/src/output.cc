#include "wpansim/output.h"

#include "wpansim/random-stream.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifndef WPANSIM_VERSION
#define WPANSIM_VERSION "dev"
#endif

namespace wpansim
{

namespace
{

std::string
Fixed(double v, int decimals = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string
XmlEscape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

/// Rounds the axis maximum up to 1, 2 or 5 times a power of ten.
double
NiceCeiling(double v)
{
    if (v <= 0)
    {
        return 1.0;
    }
    double p = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
    {
        if (v <= m * p)
        {
            return m * p;
        }
    }
    return 10.0 * p;
}

} // namespace

std::string
HashHex(uint64_t hash)
{
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return buf;
}

RunMetadata
MakeMetadata(const Scenario& scenario, const Network& network)
{
    RunMetadata meta;
    meta.scenarioName = scenario.name;
    meta.seed = scenario.seed;
    meta.scenarioHash = scenario.Hash();
    meta.generator = std::string(RandomStream::kGeneratorName);
    meta.version = WPANSIM_VERSION;
    meta.topologySummary = network.Summary();
    return meta;
}

void
WriteCsv(std::ostream& os, const MetricsReport& report, const RunMetadata& meta)
{
    os << kCsvHeader << "\n";
    for (const auto& b : report.buckets)
    {
        os << Fixed(b.startSeconds, 3) << "," << Fixed(b.throughputBps) << "," << Fixed(b.sentBps) << ","
           << Fixed(b.receivedBps) << "," << b.droppedCount << "\n";
    }
    const auto& g = report.global;
    os << "GLOBAL," << Fixed(g.throughputBps) << "," << Fixed(g.sentBps) << "," << Fixed(g.receivedBps) << ","
       << g.droppedTotal << "\n";
    os << "# scenario=" << meta.scenarioName << " seed=" << meta.seed << " scenario_hash=" << HashHex(meta.scenarioHash)
       << " generator=" << meta.generator << " version=" << meta.version << "\n";
    os << "# window_s=" << Fixed(report.windowStart.Seconds()) << ".." << Fixed(report.windowEnd.Seconds())
       << " bucket_s=" << Fixed(report.bucketWidth.Seconds()) << "\n";
}

void
WriteSummary(std::ostream& os, const Scenario& scenario, const SimulationResult& result, const RunMetadata& meta)
{
    const auto& r = result.report;
    const auto& g = r.global;
    os << "== run metadata ==\n";
    os << "scenario:       " << meta.scenarioName << "\n";
    os << "seed:           " << meta.seed << "\n";
    os << "scenario hash:  " << HashHex(meta.scenarioHash) << "\n";
    os << "generator:      " << meta.generator << "\n";
    os << "version:        " << meta.version << "\n";
    os << "duration:       " << Fixed(scenario.duration.Seconds()) << " s (window " << Fixed(r.windowStart.Seconds())
       << " .. " << Fixed(r.windowEnd.Seconds()) << " s)\n";
    os << "events:         " << result.engine.dispatched << "\n";
    os << "\n== topology ==\n" << meta.topologySummary;

    os << "\n== metrics (window averages) ==\n";
    os << "throughput:        " << Fixed(g.throughputBps / 1000.0) << " kbit/s\n";
    os << "traffic sent:      " << Fixed(g.sentBps / 1000.0) << " kbit/s\n";
    os << "traffic received:  " << Fixed(g.receivedBps / 1000.0) << " kbit/s\n";
    os << "heard on channel:  " << Fixed(g.heardBps / 1000.0) << " kbit/s\n";
    os << "packets dropped:   " << g.droppedTotal << " (" << Fixed(g.droppedPerSec, 4) << " /s)\n";
    os << "packets sent:      " << g.packetsSent << "\n";
    os << "packets delivered: " << g.packetsDelivered << "\n";
    os << "mean latency:      " << Fixed(g.meanLatency * 1000.0) << " ms\n";

    os << "\n== drop causes ==\n";
    for (const auto& [cause, count] : r.dropCauses)
    {
        os << "  " << ToString(cause) << ": " << count << "\n";
    }

    os << "\n== packet accounting (whole run) ==\n";
    const auto& a = r.accounting;
    os << "created " << a.created << " = delivered " << a.delivered << " + dropped " << a.dropped << " + in flight "
       << a.inFlight << "  (duplicates " << a.duplicates << ")\n";

    os << "\n== mac / medium ==\n";
    os << "data transmissions: " << result.mac.dataTransmissions << "  ack transmissions: " << result.mac.ackTransmissions
       << "\n";
    os << "collided transmissions: " << result.medium.collidedTransmissions << " of " << result.medium.transmissions
       << "\n";
    os << "stray acks: " << result.mac.strayAcks << "\n";
    if (result.tokenGrants > 0)
    {
        os << "token transmissions: " << result.mac.tokenTransmissions << "\n";
        os << "token grants: " << result.tokenGrants << "\n";
    }

    os << "\n== per node ==\n";
    os << "node  throughput_bps  sent_bps  received_bps  dropped\n";
    for (const auto& [node, m] : r.perNode)
    {
        char line[128];
        std::snprintf(line, sizeof(line), "%4u  %14.1f  %8.1f  %12.1f  %7llu\n", node, m.throughputBps, m.sentBps,
                      m.receivedBps, static_cast<unsigned long long>(m.droppedCount));
        os << line;
    }
}

void
WriteRunSvg(std::ostream& os, const MetricsReport& report, const RunMetadata& meta)
{
    struct Series
    {
        const char* name;
        std::vector<double> values;
        const char* color;
    };
    std::vector<Series> series{{"throughput (bit/s)", {}, "#1f77b4"},
                               {"traffic sent (bit/s)", {}, "#2ca02c"},
                               {"traffic received (bit/s)", {}, "#ff7f0e"},
                               {"packets dropped (per bucket)", {}, "#d62728"}};
    for (const auto& b : report.buckets)
    {
        series[0].values.push_back(b.throughputBps);
        series[1].values.push_back(b.sentBps);
        series[2].values.push_back(b.receivedBps);
        series[3].values.push_back(static_cast<double>(b.droppedCount));
    }
    const int width = 720;
    const int panel = 160;
    const int left = 70;
    const int top = 40;
    const int plotW = width - left - 20;
    const int height = top + static_cast<int>(series.size()) * (panel + 30) + 20;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << XmlEscape(meta.scenarioName) << " seed "
       << meta.seed << "</text>\n";
    const double t0 = report.windowStart.Seconds();
    const double t1 = report.windowEnd.Seconds();
    for (std::size_t i = 0; i < series.size(); ++i)
    {
        const int y0 = top + static_cast<int>(i) * (panel + 30);
        const auto& s = series[i];
        double vmax = s.values.empty() ? 1.0 : *std::max_element(s.values.begin(), s.values.end());
        vmax = NiceCeiling(vmax);
        os << "<text x=\"" << left << "\" y=\"" << y0 + 10 << "\">" << s.name << "</text>\n";
        os << "<rect x=\"" << left << "\" y=\"" << y0 + 15 << "\" width=\"" << plotW << "\" height=\"" << panel
           << "\" fill=\"none\" stroke=\"#999\"/>\n";
        os << "<text x=\"" << left - 5 << "\" y=\"" << y0 + 20 << "\" text-anchor=\"end\">" << Fixed(vmax, 0)
           << "</text>\n";
        os << "<text x=\"" << left - 5 << "\" y=\"" << y0 + 15 + panel << "\" text-anchor=\"end\">0</text>\n";
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.values.size(); ++k)
        {
            const double mid = report.buckets[k].startSeconds + 0.5 * report.bucketWidth.Seconds();
            const double x = left + plotW * (mid - t0) / std::max(t1 - t0, 1e-9);
            const double y = y0 + 15 + panel - panel * s.values[k] / vmax;
            os << Fixed(x, 1) << "," << Fixed(y, 1) << " ";
        }
        os << "\"/>\n";
    }
    const int axisY = top + static_cast<int>(series.size()) * (panel + 30) - 10;
    os << "<text x=\"" << left << "\" y=\"" << axisY << "\">" << Fixed(t0, 0) << " s</text>\n";
    os << "<text x=\"" << left + plotW << "\" y=\"" << axisY << "\" text-anchor=\"end\">" << Fixed(t1, 0)
       << " s</text>\n";
    os << "</svg>\n";
}

void
WriteBarSvg(std::ostream& os, const std::string& title, const std::string& unit, const std::vector<BarGroup>& bars)
{
    const int width = 480;
    const int height = 320;
    const int left = 70;
    const int top = 40;
    const int bottom = 40;
    const int plotW = width - left - 20;
    const int plotH = height - top - bottom;
    double vmax = 0;
    for (const auto& b : bars)
    {
        vmax = std::max(vmax, b.mean + (b.hasStddev ? b.stddev : 0.0));
    }
    vmax = NiceCeiling(vmax);
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << XmlEscape(title) << " (" << XmlEscape(unit)
       << ")</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + plotH << "\" x2=\"" << left + plotW << "\" y2=\"" << top + plotH
       << "\" stroke=\"#333\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plotH
       << "\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t)
    {
        const double v = vmax * t / 4.0;
        const double y = top + plotH - plotH * t / 4.0;
        os << "<text x=\"" << left - 5 << "\" y=\"" << Fixed(y + 4, 1) << "\" text-anchor=\"end\">"
           << Fixed(v, v < 10 ? 2 : 0) << "</text>\n";
    }
    const double slot = bars.empty() ? plotW : static_cast<double>(plotW) / static_cast<double>(bars.size());
    for (std::size_t i = 0; i < bars.size(); ++i)
    {
        const auto& b = bars[i];
        const double barW = slot * 0.6;
        const double x = left + slot * static_cast<double>(i) + slot * 0.2;
        const double h = plotH * b.mean / vmax;
        const double y = top + plotH - h;
        os << "<rect x=\"" << Fixed(x, 1) << "\" y=\"" << Fixed(y, 1) << "\" width=\"" << Fixed(barW, 1)
           << "\" height=\"" << Fixed(h, 1) << "\" fill=\"" << colors[i % 6] << "\"/>\n";
        if (b.hasStddev)
        {
            const double cx = x + barW / 2;
            const double yHi = top + plotH - plotH * (b.mean + b.stddev) / vmax;
            const double yLo = top + plotH - plotH * std::max(0.0, b.mean - b.stddev) / vmax;
            os << "<line x1=\"" << Fixed(cx, 1) << "\" y1=\"" << Fixed(yHi, 1) << "\" x2=\"" << Fixed(cx, 1)
               << "\" y2=\"" << Fixed(yLo, 1) << "\" stroke=\"#000\"/>\n";
        }
        os << "<text x=\"" << Fixed(x + barW / 2, 1) << "\" y=\"" << top + plotH + 15 << "\" text-anchor=\"middle\">"
           << XmlEscape(b.label) << "</text>\n";
        os << "<text x=\"" << Fixed(x + barW / 2, 1) << "\" y=\"" << Fixed(y - 4, 1) << "\" text-anchor=\"middle\">"
           << Fixed(b.mean, b.mean < 10 ? 3 : 1) << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace wpansim
