#!/usr/bin/env python3

import os
import sys


def check_requirements():
    """Check if all required packages are installed"""
    try:
        import pydantic
        import pydantic_settings
        import pyparsing
        import pandas
        import dotenv
        print("✅ All required packages are installed")
        return True
    except ImportError as e:
        print(f"❌ Missing required package: {e}")
        print("Please install requirements: pip install -r requirements/requirements.txt")
        return False


def write_schema(path: str) -> bool:
    from src.main import main as cli

    code = cli(["schema", "--out", path])
    if code:
        print(f"❌ Could not write the report schema (exit {code})")
        return False
    print(f"📋 Report schema written to {path}")
    return True


def check_examples():
    """Run the shipped curves through the report command"""
    from src.main import main as cli

    examples = [("legendre5.ec", 2), ("legendre13.ec", 2), ("curve11.ec", 5)]
    ok = True
    for name, l in examples:
        if not os.path.exists(name):
            print(f"❌ Missing example curve {name}")
            ok = False
            continue
        code = cli(["report", name, "--l", str(l)])
        if code:
            print(f"❌ report {name} --l {l} exited with {code}")
            ok = False
        else:
            print(f"✅ report {name} --l {l}")
    return ok


def main():
    print("vchow - Setup")
    print("=" * 50)

    if not check_requirements():
        return 1

    print("\n🔧 Writing schema and checking example curves...")
    success = write_schema("report.schema.json") and check_examples()

    if success:
        print("\n🎯 Setup completed successfully!")
        print("\nNext steps:")
        print("1. python run.py report legendre5.ec --l 2")
        print("2. python run.py --json report curve11.ec --l 5")
        print("3. pytest")
        return 0
    print("\n❌ Setup failed. Please check the errors above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
