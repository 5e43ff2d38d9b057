from cli.runner import main

main()
