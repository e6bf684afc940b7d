// Copyright 2026 The vrnote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vrnote/error.hpp"

namespace vrnote {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPointBehindCamera: return "PointBehindCamera";
    case ErrorCode::kDegenerateDisparity: return "DegenerateDisparity";
    case ErrorCode::kRayParallelToPlane: return "RayParallelToPlane";
    case ErrorCode::kIntersectionBehindOrigin: return "IntersectionBehindOrigin";
    case ErrorCode::kStylusOutOfView: return "StylusOutOfView";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
    case ErrorCode::kNoCorrespondence: return "NoCorrespondence";
    case ErrorCode::kAllPointsDegenerate: return "AllPointsDegenerate";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kDegenerateSpread: return "DegenerateSpread";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kDegeneratePinch: return "DegeneratePinch";
    case ErrorCode::kRayMiss: return "RayMiss";
    case ErrorCode::kOrphanUnpinch: return "OrphanUnpinch";
    case ErrorCode::kCaptureInProgress: return "CaptureInProgress";
    case ErrorCode::kAppendWithoutBegin: return "AppendWithoutBegin";
    case ErrorCode::kStrokeInProgress: return "StrokeInProgress";
    case ErrorCode::kWrongTool: return "WrongTool";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kNoPendingCapture: return "NoPendingCapture";
    case ErrorCode::kEmptySketch: return "EmptySketch";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kUnknownVersion: return "UnknownVersion";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kSequenceGap: return "SequenceGap";
    case ErrorCode::kDuplicateSequence: return "DuplicateSequence";
    case ErrorCode::kIntegrityMismatch: return "IntegrityMismatch";
    case ErrorCode::kUnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

}  // namespace vrnote
