from threepoint_gauge.cli import main

main()
