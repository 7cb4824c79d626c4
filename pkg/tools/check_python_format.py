#!/usr/bin/env python
from subprocess import check_call, CalledProcessError

_SOURCES = "ruinband setup.py tools"


def check_bash_call(string):
  check_call(["bash", "-c", string])


def _run_format():
  files_changed = False

  try:
    check_bash_call("yapf --style=./.yapf -dr {}".format(_SOURCES))
  except CalledProcessError:
    check_bash_call("yapf --style=./.yapf -ir {}".format(_SOURCES))
    files_changed = True

  if files_changed:
    print("Some files were reformatted; review and commit them.")
    exit(1)
  print("No formatting needed.")


if __name__ == "__main__":
  try:
    _run_format()
  except CalledProcessError as error:
    print("Yapf check returned exit code", error.returncode)
    exit(error.returncode)
