#pragma once

#include "etimd/bv_list.hpp"

#include <map>

namespace fixture {

using namespace etimd;

/// 64x64 frame, 8x8 blocks, blocks 0..19 coded; the current block is 20 at (32,16).
///   block 19 (left neighbour, etimd) carries (-16,0) and (0,-8)
///   block 18 (intratmp)              carries (-8,-8); (-16,0) from block 20 lands here
///   block 12 (above, intratmp)       carries (-8,0)
///   block 17 (two rings left)        carries (-16,0) again
///   block 6  (sub-pel source)        carries (-130,-64) sixteenths = (-9,-4)
/// Expected list: primaries (-16,0) (0,-8) (-8,0) (-8,-8) (-9,-4), then AR-BVs (-24,-8) (-24,0).
struct Chain {
  ReconBuffer buf{64, 64, 8, 8};
  BvStore store{64, 64, 8};
  BlockRef current;

  Chain()
  {
    const std::map<int, CodingRecord> special = {
        {19, {{}, RecordTool::Etimd, {{-16, 0}, {0, -8}}, BvPrecision::Integer}},
        {18, {{}, RecordTool::IntraTmp, {{-8, -8}}, BvPrecision::Integer}},
        {12, {{}, RecordTool::IntraTmp, {{-8, 0}}, BvPrecision::Integer}},
        {17, {{}, RecordTool::IntraTmp, {{-16, 0}}, BvPrecision::Integer}},
        {6, {{}, RecordTool::IntraTmp, {{-130, -64}}, BvPrecision::Sixteenth}},
    };
    for (int i = 0; i < 20; ++i) {
      const BlockRef& b = buf.blocks()[i];
      commit_block(buf, b, PelBlock::Constant(8, 8, 10 * (i % 7)));
      CodingRecord rec;
      if (const auto it = special.find(i); it != special.end()) {
        rec = it->second;
      }
      rec.block = b;
      store.put(rec);
    }
    current = buf.blocks()[20];
  }
};

}  // namespace fixture
