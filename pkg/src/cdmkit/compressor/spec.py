"""Compressor configuration records."""

from dataclasses import dataclass, field

KIND_BLOCKSORT = "builtin-blocksort"
KIND_LZ = "builtin-lz"
KIND_EXTERNAL = "external"
KINDS = (KIND_BLOCKSORT, KIND_LZ, KIND_EXTERNAL)

# bump when a built-in codec changes output, so cached sizes go stale
CODEC_VERSION = 1

DEFAULT_BLOCK_SIZE = 900000


@dataclass(frozen=True)
class CompressorSpec:
    """Names a compressor and the parameters that determine its sizes.

    ``command_template`` is an argument vector containing the ``{in}`` and
    ``{out}`` placeholders; it is required for the external kind and
    forbidden for the built-ins.
    """

    id: str
    kind: str
    block_size: int = DEFAULT_BLOCK_SIZE
    command_template: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("spec id must be non-empty")
        if self.kind not in KINDS:
            raise ValueError(f"unknown compressor kind {self.kind!r}")
        if self.kind == KIND_BLOCKSORT and self.block_size < 1024:
            raise ValueError(f"block_size must be >= 1024, got {self.block_size}")
        if self.kind == KIND_EXTERNAL:
            if not self.command_template:
                raise ValueError("external kind requires a command_template")
            template = tuple(self.command_template)
            object.__setattr__(self, "command_template", template)
            joined = " ".join(template)
            if "{in}" not in joined or "{out}" not in joined:
                raise ValueError("command_template needs {in} and {out} placeholders")
        elif self.command_template is not None:
            raise ValueError("built-in kinds forbid a command_template")

    @property
    def cache_key(self) -> str:
        """Cache column for this spec; built-ins carry the codec version."""
        if self.kind == KIND_EXTERNAL:
            return self.id
        return f"{self.id}@v{CODEC_VERSION}"


def blocksort_spec(block_size: int = DEFAULT_BLOCK_SIZE) -> CompressorSpec:
    return CompressorSpec(id="blocksort", kind=KIND_BLOCKSORT, block_size=block_size)


def lz_spec() -> CompressorSpec:
    return CompressorSpec(id="lz", kind=KIND_LZ)
