#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "x3dui/corpus.hpp"
#include "x3dui/emitter.hpp"
#include "x3dui/layout.hpp"
#include "x3dui/runtime.hpp"
#include "x3dui/toolchain.hpp"

using namespace x3dui;

namespace {

std::vector<Size> random_children(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dim(5, 200);
    std::vector<Size> out;
    for (int i = 0; i < n; ++i)
        out.push_back({static_cast<double>(dim(rng)), static_cast<double>(dim(rng))});
    return out;
}

std::vector<std::string> corpus_texts() {
    std::vector<std::string> out;
    for (const auto& entry : corpus::generate_corpus()) {
        if (entry.category != "images") out.push_back(entry.content);
    }
    return out;
}

std::string workbench_spec() {
    return "<Display><Frame title=\"W\" width=\"400\" height=\"300\" "
           "controls=\"MINIMIZE,MAXIMIZE,CLOSE\">"
           "<TextButton text=\"Run\"/><CheckBox text=\"log\"/>"
           "<ComboBox items=\"one|two|three\"/>"
           "<HorizontalSlider min=\"0\" max=\"10\" intervals=\"10\"/>"
           "<TextField maxLength=\"12\"/></Frame></Display>";
}

void bm_layout_flow(benchmark::State& state) {
    auto children = random_children(static_cast<int>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(layout_flow(400, children, 5, 5));
}
BENCHMARK(bm_layout_flow)->Arg(8)->Arg(64)->Arg(512);

void bm_layout_grid(benchmark::State& state) {
    auto children = random_children(static_cast<int>(state.range(0)), 13);
    for (auto _ : state)
        benchmark::DoNotOptimize(layout_grid(16, 16, children, 5, 5, true, true));
}
BENCHMARK(bm_layout_grid)->Arg(8)->Arg(64)->Arg(256);

void bm_frame_relayout(benchmark::State& state) {
    Desktop desktop(assign_ids(parse_ui_spec(workbench_spec())));
    double w = 300;
    for (auto _ : state) {
        w = w >= 500 ? 300 : w + 1;
        benchmark::DoNotOptimize(desktop.frame_resize(1, {w, 300}));
    }
}
BENCHMARK(bm_frame_relayout);

void bm_event_dispatch(benchmark::State& state) {
    Desktop desktop(assign_ids(parse_ui_spec(workbench_spec())));
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> px(0, 800), py(0, 600);
    for (auto _ : state) {
        benchmark::DoNotOptimize(desktop.dispatch(UiEvent::mouse_down(px(rng), py(rng))));
        benchmark::DoNotOptimize(desktop.dispatch(UiEvent::mouse_up(px(rng), py(rng))));
    }
}
BENCHMARK(bm_event_dispatch);

void bm_minify_corpus(benchmark::State& state) {
    std::vector<std::string> texts = corpus_texts();
    double bytes = 0;
    for (const auto& t : texts) bytes += static_cast<double>(t.size());
    state.counters["bytes"] = bytes;
    for (auto _ : state) {
        for (const auto& t : texts) benchmark::DoNotOptimize(tool::minify(t));
    }
}
BENCHMARK(bm_minify_corpus);

void bm_parse_corpus(benchmark::State& state) {
    std::string text;
    for (const auto& entry : corpus::generate_corpus()) {
        if (entry.category != "images") {
            text = entry.content;
            break;
        }
    }
    for (auto _ : state) benchmark::DoNotOptimize(xml::parse(text));
}
BENCHMARK(bm_parse_corpus);

void bm_emit_scene(benchmark::State& state) {
    WidgetTree tree = assign_ids(parse_ui_spec(workbench_spec()));
    for (auto _ : state) benchmark::DoNotOptimize(emit::emit_scene(tree, {}));
}
BENCHMARK(bm_emit_scene);

}  // namespace

BENCHMARK_MAIN();
