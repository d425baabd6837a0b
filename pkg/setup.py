"""
Setup script for qscatter

    python setup.py            # bootstrap a development checkout
    python setup.py install    # any setuptools command builds the package
"""

import os
import platform
import subprocess
import sys
from pathlib import Path

SETUPTOOLS_COMMANDS = {"install", "develop", "sdist", "bdist_wheel", "build", "egg_info", "build_py",
                       "dist_info", "editable_wheel", "bdist_egg", "build_ext", "--version", "--name"}
DEV_ONLY = ("pytest", "hypothesis", "black", "flake8", "mypy")
VENV = Path(".venv")


def _venv_tool(name: str) -> str:
    if platform.system() == "Windows":
        return str(VENV / "Scripts" / name)
    return str(VENV / "bin" / name)


def _run(*command: str, quiet: bool = False) -> bool:
    try:
        subprocess.run(list(command), check=True, stdout=subprocess.DEVNULL if quiet else None)
        return True
    except (subprocess.CalledProcessError, FileNotFoundError) as e:
        print(f"❌ {' '.join(command[:3])} failed: {e}")
        return False


def python_version_ok():
    if sys.version_info >= (3, 9):
        print(f"✅ Python {platform.python_version()}")
        return True
    print(f"❌ qscatter needs Python 3.9+, found {platform.python_version()}")
    return False


def create_venv():
    if VENV.exists():
        print(f"✅ Reusing {VENV}/")
        return True
    print(f"🐍 Creating {VENV}/ ...")
    return _run(sys.executable, "-m", "venv", str(VENV))


def install_requirements():
    print("📦 Installing requirements.txt ...")
    pip = _venv_tool("pip")
    return _run(pip, "install", "--upgrade", "pip") and _run(pip, "install", "-r", "requirements.txt")


def write_env_file():
    env_file, template = Path(".env"), Path(".env.example")
    if env_file.exists():
        print("✅ Keeping existing .env")
        return True
    if not template.exists():
        print("❌ Missing .env.example")
        return False
    env_file.write_text(template.read_text())
    print("✅ Wrote .env from .env.example")
    return True


def create_log_dir():
    log_dir = Path(os.getenv("LOG_FILE", "logs/qscatter.log")).parent
    log_dir.mkdir(parents=True, exist_ok=True)
    print(f"✅ Logs go to {log_dir}/")
    return True


def smoke_test():
    """Import the numeric stack and run one cheap verification inside the venv"""
    python = _venv_tool("python")
    modules = "numpy, scipy, mpmath, pydantic, dotenv, pythonjsonlogger"
    print(f"🔍 Importing {modules} ...")
    if not _run(python, "-c", f"import {modules}"):
        return False
    print("🔍 Running qscatter verify --oracle-samples 1 ...")
    return _run(python, "qscatter.py", "verify", "--oracle-samples", "1", quiet=True)


STEPS = [
    ("Python", python_version_ok),
    ("Virtual environment", create_venv),
    ("Requirements", install_requirements),
    (".env", write_env_file),
    ("Log directory", create_log_dir),
    ("Smoke test", smoke_test),
]


def bootstrap():
    print("=" * 60)
    print("qscatter bootstrap")
    print("=" * 60)

    failed = []
    for title, step in STEPS:
        print(f"\n--- {title} ---")
        try:
            ok = step()
        except Exception as e:
            print(f"❌ {title}: {e}")
            ok = False
        if not ok:
            failed.append(title)

    print("\n" + "=" * 60)
    if failed:
        print(f"⚠️  Finished with problems in: {', '.join(failed)}")
        return False

    activate = r".venv\Scripts\activate" if platform.system() == "Windows" else "source .venv/bin/activate"
    print("🎉 Ready. Next:")
    print(f"   {activate}")
    print("   pytest")
    print("   python qscatter.py amplitudes --alpha 1 --beta 1 --k 1.0")
    return True


def package():
    from setuptools import setup

    requirements = [
        line.strip() for line in Path("requirements.txt").read_text().splitlines()
        if line.strip() and not line.startswith("#")
    ]
    runtime = [r for r in requirements if not r.startswith(DEV_ONLY)]
    setup(
        name="qscatter",
        version="0.1.0",
        description="Scattering, poles and Casimir energies of delta and Poschl-Teller potentials",
        py_modules=[
            "scattering_core", "kink_scattering", "dirichlet_limit", "pole_analysis",
            "vacuum_energy", "numeric_oracle", "invariant_suite", "qscatter",
        ],
        packages=["utils"],
        python_requires=">=3.9",
        install_requires=runtime,
        extras_require={"dev": [r for r in requirements if r not in runtime]},
        entry_points={"console_scripts": ["qscatter = qscatter:main"]},
    )


if __name__ == "__main__":
    if SETUPTOOLS_COMMANDS.intersection(sys.argv[1:]):
        package()
        sys.exit(0)
    try:
        sys.exit(0 if bootstrap() else 1)
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted")
        sys.exit(1)
