#!/usr/bin/env python3
"""
PCMAS Setup Validation Script
Validates that the environment is configured and the analytical core gives known answers
"""

import sys
import importlib
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


def check_python_version():
    """Check Python version compatibility"""
    print("🐍 Checking Python version...")
    version = sys.version_info
    if version.major == 3 and version.minor >= 11:
        print(f"✅ Python {version.major}.{version.minor}.{version.micro} is compatible")
        return True
    else:
        print(f"❌ Python {version.major}.{version.minor}.{version.micro} is not compatible. Need Python 3.11+")
        return False


def check_dependencies():
    """Check if all required packages are installed"""
    print("\n📦 Checking dependencies...")

    required_packages = [
        'flask', 'flask_limiter', 'pandas', 'numpy', 'scipy',
        'joblib', 'dotenv', 'gunicorn', 'pytest'
    ]

    missing_packages = []

    for package in required_packages:
        try:
            importlib.import_module(package)
            print(f"✅ {package}")
        except ImportError:
            print(f"❌ {package} - Not found")
            missing_packages.append(package)

    if missing_packages:
        print(f"\n❌ Missing packages: {', '.join(missing_packages)}")
        print("Run: pip install -r requirements.txt")
        return False

    print("✅ All dependencies are installed")
    return True


def check_directories():
    """Check if required directories exist"""
    print("\n📁 Checking directories...")

    from config import config
    required_dirs = [config.LOG_DIR, config.POLICY_DIR, config.RESULTS_DIR, 'data/games']

    for dir_path in required_dirs:
        full_path = project_root / dir_path
        if full_path.exists():
            print(f"✅ {dir_path}/")
        else:
            print(f"⚠️  Creating {dir_path}/")
            full_path.mkdir(parents=True, exist_ok=True)

    return True


def check_environment_config():
    """Check environment configuration"""
    print("\n⚙️  Checking environment configuration...")

    try:
        from config import config

        print(f"✅ Environment: {config.FLASK_ENV}")
        print(f"✅ Worker threads: {config.PCMAS_THREADS}")
        print(f"✅ Base seed: {config.PCMAS_SEED}")
        print(f"✅ Teacher MDP: {config.TMDP_CELLS} cells/axis, gamma0={config.TMDP_GAMMA0}, tol={config.TMDP_TOL}")

        errors = config.validate()
        if errors:
            print("❌ Configuration errors:")
            for error in errors:
                print(f"   - {error}")
            return False

        return True

    except Exception as e:
        print(f"❌ Environment config error: {e}")
        return False


def check_punishment_design():
    """Known answers for the law-enforcement prisoner's dilemma"""
    print("\n⚖️  Checking punishment design...")

    try:
        from games import JointAction, load_matrix_game
        from punishment import deterrence_report, incentive, punishment_plan

        game = load_matrix_game(str(project_root / 'data' / 'games' / 'law_pd.json'))
        plan = punishment_plan(game)
        plan_ok = (plan.punish_as_p1.pure_action == 1 and plan.punish_as_p2.pure_action == 1
                   and abs(plan.v - 5) < 1e-6 and abs(plan.v_prime - 5) < 1e-6)
        print(f"{'✅' if plan_ok else '❌'} Punishing strategy: v={plan.v:g}, v'={plan.v_prime:g}")

        report = deterrence_report(game, JointAction(0, 0), 16)
        deter_ok = report.p_min == 9
        print(f"{'✅' if deter_ok else '❌'} Punishers needed among 16 agents: {report.p_min}")

        variant = load_matrix_game(str(project_root / 'data' / 'games' / 'three_efficient.json'))
        sums = [sum(incentive(variant, law)) for law in (JointAction(0, 0), JointAction(0, 1), JointAction(1, 0))]
        law_ok = sums == [20, 5, 5]
        print(f"{'✅' if law_ok else '❌'} Deviation incentives per efficient law: {sums}")

        return plan_ok and deter_ok and law_ok

    except Exception as e:
        print(f"❌ Punishment design check failed: {e}")
        return False


def test_api_import():
    """Test that the API can be imported and answers its health check"""
    print("\n🌐 Testing API...")

    try:
        from api.app import app

        with app.test_client() as client:
            response = client.get('/health')

        if response.status_code == 200:
            health_data = response.get_json()
            print("✅ API health check passed")
            print(f"   Status: {health_data['status']}")
            print(f"   Policy loaded: {health_data['policy_loaded']}")
            return True
        else:
            print(f"❌ API health check failed: {response.status_code}")
            return False

    except Exception as e:
        print(f"❌ API startup failed: {e}")
        return False


def main():
    """Run all validation checks"""
    print("🚀 PCMAS Setup Validation")
    print("=" * 50)

    checks = [
        ("Python Version", check_python_version),
        ("Dependencies", check_dependencies),
        ("Directories", check_directories),
        ("Environment Config", check_environment_config),
        ("Punishment Design", check_punishment_design),
        ("API", test_api_import),
    ]

    results = []

    for check_name, check_func in checks:
        try:
            result = check_func()
            results.append((check_name, result))
        except Exception as e:
            print(f"❌ {check_name} check failed with exception: {e}")
            results.append((check_name, False))

    # Summary
    print("\n" + "=" * 50)
    print("📋 VALIDATION SUMMARY")
    print("=" * 50)

    passed = sum(1 for _, result in results if result)
    failed = len(results) - passed

    for check_name, result in results:
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"{status} {check_name}")

    print(f"\n📊 Results: {passed} passed, {failed} failed")

    if failed == 0:
        print("\n🎉 All checks passed!")
        return 0
    print("\n⚠️  Some checks failed. Please review the issues above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
