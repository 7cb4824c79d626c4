# Copyright 2026 The Ruinband Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

# Ensure the TensorFlow version is in the right range. This
# needs to happen before anything else, since the imports below will try to
# import TensorFlow, too.

from packaging.version import Version
import warnings

import tensorflow as tf

from ruinband.version import MIN_TF_VERSION
from ruinband.version import MAX_TF_VERSION


def _check_tf_version():
  """Warn the user if the version of TensorFlow used is not supported.

    Ruinband only uses the stateless random ops and `tf.GradientTape`, both
    stable since 2.5; other versions get a warning, not an error.
    """

  if "dev" in tf.__version__:
    warnings.warn(
        "You are currently using a nightly version of TensorFlow ({}). \n"
        "Ruinband is tested against release versions only; stateless random "
        "streams may differ from the released ones."
        "".format(tf.__version__),
        UserWarning,
    )
    return

  min_version = Version(MIN_TF_VERSION)
  max_version = Version(MAX_TF_VERSION)

  if min_version <= Version(tf.__version__) < max_version:
    return

  warnings.warn(
      "Ruinband is tested with TensorFlow versions above or equal to {} and "
      "strictly below {}. \n"
      "The version of TensorFlow you are currently using is {}. \n"
      "Simulated data sets may not reproduce byte-for-byte across versions."
      "".format(MIN_TF_VERSION, MAX_TF_VERSION, tf.__version__),
      UserWarning,
  )
