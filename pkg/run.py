"""
SpinScramble 快速启动脚本
"""
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np

from spinscramble.cli import main as cli_main
from spinscramble.coingame import overlap_amplitude
from spinscramble.core.hamiltonians import CouplingSet
from spinscramble.mcd import extract_spectrum, hamming_weight_spread
from spinscramble.otoc import otoc
from spinscramble.utils import setup_logger


def quick_test():
    print("="*60)
    print("SpinScramble 快速测试")
    print("="*60)
    
    logger = setup_logger("SpinScramble")
    logger.info("开始快速测试...")
    
    c = CouplingSet.from_hetero([1.0, 0.7, 0.4])
    
    print("\n[1/3] 测试多量子相干谱...")
    spectrum = extract_spectrum(c, T=1.0)
    print(f"  ✓ 阶数 {spectrum.orders.tolist()}")
    print(f"  ✓ 总幅度 {spectrum.total():.12f}, 展宽 {hamming_weight_spread(spectrum):.6f}")
    
    print("\n[2/3] 测试 OTOC...")
    values = [otoc(c, T=1.0, tau=tau) for tau in (0.0, 0.5, 1.0)]
    print(f"  ✓ F(T=1, τ) = {np.round(np.real(values), 6).tolist()}")
    
    print("\n[3/3] 测试硬币游戏...")
    print(f"  ✓ A(N=15, k=3, m=5) = {overlap_amplitude(15, 3, 5):.6f}")
    
    print("\n" + "="*60)
    print("快速测试完成！")
    print("="*60)
    return True


def main():
    print("""
╔══════════════════════════════════════════════════════════╗
║                                                          ║
║            SpinScramble 中心自旋信息扰乱实验              ║
║                                                          ║
║  版本: 1.0.0                                             ║
║  Python: >=3.8, <3.12                                    ║
║                                                          ║
╚══════════════════════════════════════════════════════════╝
    """)
    
    experiments = {'2': 'couplings', '3': 'mcd', '4': 'otoc', '5': 'coingame', '6': 'chaos'}
    while True:
        print("\n请选择操作:")
        print("  1. 快速测试")
        print("  2. 偶极耦合与连通团簇")
        print("  3. 多量子相干谱系综")
        print("  4. OTOC 曲面与扰乱免疫因子")
        print("  5. 硬币交换游戏")
        print("  6. 环境能级统计")
        print("  7. 退出")
        
        choice = input("\n请输入选项 (1-7): ").strip()
        
        if choice == '1':
            quick_test()
        elif choice in experiments:
            print(f"\n运行 {experiments[choice]} 实验 (结果写入 results/)...")
            code = cli_main([experiments[choice], '--orientations', '20', '--output-dir', 'results'])
            print(f"\n退出码: {code}")
        elif choice == '7':
            print("\n感谢使用 SpinScramble！")
            break
        else:
            print("\n无效选项，请重新选择")


if __name__ == "__main__":
    main()
