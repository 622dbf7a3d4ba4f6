"""
Atomic file writes shared by the exporters.
"""
import shutil
import tempfile
from pathlib import Path


def atomic_write_text(text: str, filepath: Path) -> None:
    """
    Writes text to filepath via a temporary file in the same directory.

    Raises:
        IOError: If file writing fails.
    """
    filepath.parent.mkdir(parents=True, exist_ok=True)

    # Temporary file in the target directory so the move stays on one filesystem
    temp_dir = filepath.parent
    temp_path = None
    try:
        with tempfile.NamedTemporaryFile(mode="w", dir=temp_dir, delete=False, encoding="utf-8", newline="") as tmp_file:
            tmp_file.write(text)
            temp_path = Path(tmp_file.name)

        shutil.move(str(temp_path), str(filepath))

    except (IOError, OSError) as e:
        if temp_path is not None and temp_path.exists():
            try:
                temp_path.unlink()
            except OSError:
                pass
        raise IOError(f"Failed to write {filepath}: {e}")
