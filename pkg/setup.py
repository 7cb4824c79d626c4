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
"""Ruinband: statistical inference for ruin probabilities.

Ruinband estimates the parameters of a Levy insurance surplus from observed
claims and surplus paths, computes the adjustment coefficient, the Cramer
approximation of the ruin probability and its parameter gradients, and builds
delta-method confidence intervals that can be validated by Monte Carlo.
"""

import os
from pathlib import Path
import sys

from datetime import datetime
from setuptools import find_packages
from setuptools import setup

DOCLINES = __doc__.split("\n")


def get_last_commit_time() -> str:
  string_time = os.getenv("NIGHTLY_TIME").replace('"', "")
  return datetime.strptime(string_time,
                           "%Y-%m-%dT%H:%M:%SZ").strftime("%Y%m%d%H%M%S")


def get_project_name_version():
  # Version
  version = {}
  base_dir = os.path.dirname(os.path.abspath(__file__))
  with open(os.path.join(base_dir, "ruinband", "version.py")) as fp:
    exec(fp.read(), version)

  project_name = "ruinband"
  if "--nightly" in sys.argv:
    project_name = "ruinband-nightly"
    version["__version__"] += get_last_commit_time()
    sys.argv.remove("--nightly")

  return project_name, version


project_name, version = get_project_name_version()
min_tf_version = version["MIN_TF_VERSION"]
max_tf_version = version["MAX_TF_VERSION"]
tf_requirement = "tensorflow>={},<{}".format(min_tf_version, max_tf_version)
setup(
    name=project_name,
    version=version["__version__"],
    description=DOCLINES[0],
    long_description="\n".join(DOCLINES[2:]),
    author="The Ruinband Authors",
    packages=find_packages(exclude=["examples", "examples.*"]),
    install_requires=Path("requirements.txt").read_text().splitlines() +
    [tf_requirement],
    extras_require={
        "tensorflow-cpu": [
            "tensorflow-cpu>={},<{}".format(min_tf_version, max_tf_version)
        ],
    },
    entry_points={
        "console_scripts": ["ruinband=ruinband.cli.ruinband_main:run"],
    },
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.7",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Financial and Insurance Industry",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Office/Business :: Financial",
    ],
    license="Apache 2.0",
    keywords="ruin probability insurance levy process confidence interval",
)
