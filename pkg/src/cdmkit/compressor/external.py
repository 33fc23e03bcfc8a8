"""Adapter that measures compressed sizes via an external program."""

import os
import subprocess
import tempfile

from ..exceptions import ExternalCompressorError
from .spec import CompressorSpec


class ExternalCompressor:
    """Runs a command template on a temp file and reports the output size.

    The template's ``{in}`` and ``{out}`` placeholders are substituted
    inside each argument; the command must exit 0 and leave the compressed
    file at ``{out}``. No shell is involved.
    """

    def __init__(self, spec: CompressorSpec):
        if not spec.command_template:
            raise ValueError("spec has no command_template")
        self.spec = spec
        self.invocations = 0

    def size(self, data: bytes) -> int:
        self.invocations += 1
        with tempfile.TemporaryDirectory(prefix="cdmkit-ext-") as tmp:
            in_path = os.path.join(tmp, "input.bin")
            out_path = os.path.join(tmp, "output.bin")
            with open(in_path, "wb") as fh:
                fh.write(data)
            argv = [
                arg.replace("{in}", in_path).replace("{out}", out_path)
                for arg in self.spec.command_template
            ]
            try:
                proc = subprocess.run(
                    argv,
                    stdout=subprocess.DEVNULL,
                    stderr=subprocess.PIPE,
                )
            except FileNotFoundError:
                raise ExternalCompressorError(
                    self.spec.id, f"executable not found: {argv[0]}"
                ) from None
            if proc.returncode != 0:
                tail = proc.stderr.decode(errors="replace").strip()[-500:]
                raise ExternalCompressorError(
                    self.spec.id,
                    f"exit code {proc.returncode}: {tail or 'no stderr'}",
                )
            if not os.path.exists(out_path):
                raise ExternalCompressorError(
                    self.spec.id, "command produced no output file"
                )
            return os.path.getsize(out_path)
